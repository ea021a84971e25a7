#pragma once

// Truncated power series in one small parameter with complex coefficients.
//
// A Jet of order N holds c[0..N] and represents c[0] + c[1] e + ... + c[N] e^N
// modulo e^(N+1). Products truncate at the common order, so every coefficient
// that is kept is exact up to floating-point rounding.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>

#include "rogue/errors.hpp"

namespace rogue {

using cplx = std::complex<double>;

inline constexpr int kMaxJetOrder = 24;

class Jet {
public:
    Jet() = default;
    explicit Jet(int order);
    Jet(int order, std::initializer_list<cplx> coeffs);

    static Jet constant(int order, cplx value);
    /// The expansion parameter itself, e.
    static Jet variable(int order);

    int order() const noexcept { return order_; }
    std::span<const cplx> coeffs() const noexcept { return {c_.data(), static_cast<std::size_t>(order_) + 1}; }

    cplx operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    cplx& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

    bool is_finite() const noexcept;

    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator*=(const Jet& rhs);
    Jet& operator*=(cplx s) noexcept;

private:
    int order_ = 0;
    std::array<cplx, kMaxJetOrder + 1> c_{};
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(Jet a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(cplx s, Jet a);
Jet operator*(Jet a, cplx s);
Jet operator+(Jet a, cplx s);
Jet operator+(cplx s, Jet a);

/// Coefficients of an entire function f(z) = sum_k term(k) z^k.
/// Each term is built by running multiplication, never from a factorial table.
struct ExpSeries {
    cplx operator()(int k) const;
};
/// cos(sqrt(w)) = sum_k (-1)^k w^k / (2k)!
struct CosSqrtSeries {
    cplx operator()(int k) const;
};
/// sin(sqrt(w)) / sqrt(w) = sum_k (-1)^k w^k / (2k+1)!
struct SincSqrtSeries {
    cplx operator()(int k) const;
};
/// sin(z) = sum over odd k of (-1)^((k-1)/2) z^k / k!
struct SinSeries {
    cplx operator()(int k) const;
};

namespace detail {
Jet apply_entire_impl(cplx (*term)(const void*, int), const void* ctx, const Jet& z, int terms);
}

/// Evaluates sum_{k=0}^{terms} term(k) z^k truncated at z.order().
/// z must have a zero constant term, which makes the result exact once
/// terms >= z.order(); extra terms are ignored.
template <class Series>
Jet apply_entire(const Series& term, const Jet& z, int terms)
{
    return detail::apply_entire_impl(
        [](const void* ctx, int k) { return (*static_cast<const Series*>(ctx))(k); }, &term, z, terms);
}

/// exp(z) for any jet; the constant term is factored out as e^{z[0]}.
/// Throws NumericOverflow when Re z[0] exceeds the double exponent range.
Jet exp(const Jet& z);

} // namespace rogue
