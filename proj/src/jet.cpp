#include "rogue/jet.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace rogue {
namespace {

void check_order(int order)
{
    if (order < 0 || order > kMaxJetOrder) {
        throw UsageError("jet order " + std::to_string(order) + " outside [0, " + std::to_string(kMaxJetOrder) + "]");
    }
}

void check_same_order(const Jet& a, const Jet& b)
{
    if (a.order() != b.order()) {
        throw UsageError("jet order mismatch: " + std::to_string(a.order()) + " vs " + std::to_string(b.order()));
    }
}

// Two-term (Neumaier) accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double err = 0.0;

    void add(double v) noexcept
    {
        const double s = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            err += (sum - s) + v;
        } else {
            err += (v - s) + sum;
        }
        sum = s;
    }
    double value() const noexcept { return sum + err; }
};

} // namespace

Jet::Jet(int order)
    : order_(order)
{
    check_order(order);
}

Jet::Jet(int order, std::initializer_list<cplx> coeffs)
    : Jet(order)
{
    if (static_cast<int>(coeffs.size()) > order + 1) {
        throw UsageError("too many coefficients for jet order " + std::to_string(order));
    }
    int k = 0;
    for (const cplx& c : coeffs) {
        c_[static_cast<std::size_t>(k++)] = c;
    }
}

Jet Jet::constant(int order, cplx value)
{
    Jet j(order);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(int order)
{
    Jet j(order);
    if (order >= 1) {
        j.c_[1] = 1.0;
    }
    return j;
}

bool Jet::is_finite() const noexcept
{
    for (const cplx& c : coeffs()) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            return false;
        }
    }
    return true;
}

Jet& Jet::operator+=(const Jet& rhs)
{
    check_same_order(*this, rhs);
    for (int k = 0; k <= order_; ++k) {
        c_[static_cast<std::size_t>(k)] += rhs[k];
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs)
{
    check_same_order(*this, rhs);
    for (int k = 0; k <= order_; ++k) {
        c_[static_cast<std::size_t>(k)] -= rhs[k];
    }
    return *this;
}

Jet& Jet::operator*=(const Jet& rhs)
{
    *this = *this * rhs;
    return *this;
}

Jet& Jet::operator*=(cplx s) noexcept
{
    for (int k = 0; k <= order_; ++k) {
        c_[static_cast<std::size_t>(k)] *= s;
    }
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= cplx(-1.0); }
Jet operator*(cplx s, Jet a) { return a *= s; }
Jet operator*(Jet a, cplx s) { return a *= s; }

Jet operator+(Jet a, cplx s)
{
    a[0] += s;
    return a;
}

Jet operator+(cplx s, Jet a) { return std::move(a) + s; }

Jet operator*(const Jet& a, const Jet& b)
{
    check_same_order(a, b);
    Jet out(a.order());
    for (int n = 0; n <= a.order(); ++n) {
        CompensatedSum re;
        CompensatedSum im;
        for (int k = 0; k <= n; ++k) {
            const cplx x = a[k];
            const cplx y = b[n - k];
            re.add(x.real() * y.real());
            re.add(-(x.imag() * y.imag()));
            im.add(x.real() * y.imag());
            im.add(x.imag() * y.real());
        }
        out[n] = cplx(re.value(), im.value());
    }
    return out;
}

cplx ExpSeries::operator()(int k) const
{
    double v = 1.0;
    for (int j = 1; j <= k; ++j) {
        v /= j;
    }
    return v;
}

cplx CosSqrtSeries::operator()(int k) const
{
    double v = 1.0;
    for (int j = 1; j <= k; ++j) {
        v /= -static_cast<double>((2 * j - 1) * (2 * j));
    }
    return v;
}

cplx SincSqrtSeries::operator()(int k) const
{
    double v = 1.0;
    for (int j = 1; j <= k; ++j) {
        v /= -static_cast<double>((2 * j) * (2 * j + 1));
    }
    return v;
}

cplx SinSeries::operator()(int k) const
{
    if (k % 2 == 0) {
        return 0.0;
    }
    double v = 1.0;
    for (int j = 1; j <= k; ++j) {
        v /= j;
    }
    return ((k - 1) / 2) % 2 == 0 ? v : -v;
}

namespace detail {

Jet apply_entire_impl(cplx (*term)(const void*, int), const void* ctx, const Jet& z, int terms)
{
    if (z[0] != cplx(0.0)) {
        throw std::domain_error("apply_entire needs a jet with zero constant term");
    }
    const int order = z.order();
    Jet out = Jet::constant(order, term(ctx, 0));
    Jet power = Jet::constant(order, 1.0);
    const int last = terms < order ? terms : order;
    for (int k = 1; k <= last; ++k) {
        power = power * z;
        out += term(ctx, k) * power;
    }
    return out;
}

} // namespace detail

Jet exp(const Jet& z)
{
    const cplx z0 = z[0];
    // log(DBL_MAX)
    constexpr double kMaxExponent = 709.782712893384;
    if (z0.real() > kMaxExponent) {
        throw NumericOverflow("jet exponential overflows: Re z0 = " + std::to_string(z0.real()), z0.real());
    }
    Jet shifted = z;
    shifted[0] = 0.0;
    return std::exp(z0) * apply_entire(ExpSeries{}, shifted, z.order());
}

} // namespace rogue
