#pragma once

// Small dense vectors and matrices of dimension 2 or 3.
//
// Storage is fixed at 3 (3x3) so values stay on the stack; the active
// dimension is a runtime property. The element type is complex<double> in
// production and Jet for the series oracle. Accumulation starts from the
// first product rather than T{} so jets of any order work without a zero.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <type_traits>

#include "rogue/errors.hpp"

namespace rogue {

inline constexpr int kMaxDim = 3;

template <class T>
class SmallVec;
template <class T>
class SmallMat;

namespace detail {
template <class T>
struct is_small : std::false_type {};
template <class T>
struct is_small<SmallVec<T>> : std::true_type {};
template <class T>
struct is_small<SmallMat<T>> : std::true_type {};
} // namespace detail

template <class S>
concept ScalarLike = !detail::is_small<S>::value;

template <class T>
class SmallVec {
public:
    SmallVec() = default;
    explicit SmallVec(int n, const T& fill = T{})
        : n_(n)
    {
        check_dim(n);
        v_.fill(fill);
    }
    SmallVec(std::initializer_list<T> values)
        : n_(static_cast<int>(values.size()))
    {
        check_dim(n_);
        std::copy(values.begin(), values.end(), v_.begin());
    }

    int size() const noexcept { return n_; }
    const T& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    T& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }

    const T* begin() const noexcept { return v_.data(); }
    const T* end() const noexcept { return v_.data() + n_; }

    friend bool operator==(const SmallVec& a, const SmallVec& b)
    {
        return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
    }

private:
    static void check_dim(int n)
    {
        if (n < 1 || n > kMaxDim) {
            throw UsageError("vector size outside [1, 3]");
        }
    }

    int n_ = 0;
    std::array<T, kMaxDim> v_{};
};

template <class T>
class SmallMat {
public:
    SmallMat() = default;
    explicit SmallMat(int dim, const T& fill = T{})
        : dim_(dim)
    {
        if (dim < 1 || dim > kMaxDim) {
            throw UsageError("matrix dimension outside [1, 3]");
        }
        a_.fill(fill);
    }

    int dim() const noexcept { return dim_; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }
    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }

private:
    int dim_ = 0;
    std::array<T, kMaxDim * kMaxDim> a_{};
};

using CVec = SmallVec<std::complex<double>>;
using CMat = SmallMat<std::complex<double>>;

inline CMat identity(int dim)
{
    CMat m(dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

/// sigma_3 generalised to diag(1, -1, ..., -1).
inline CMat sigma3(int dim)
{
    CMat m(dim);
    m(0, 0) = 1.0;
    for (int i = 1; i < dim; ++i) {
        m(i, i) = -1.0;
    }
    return m;
}

template <class T>
SmallMat<T> operator*(const SmallMat<T>& a, const SmallMat<T>& b)
{
    const int n = a.dim();
    SmallMat<T> c(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            T acc = a(i, 0) * b(0, j);
            for (int k = 1; k < n; ++k) {
                acc += a(i, k) * b(k, j);
            }
            c(i, j) = acc;
        }
    }
    return c;
}

template <class T>
SmallVec<T> operator*(const SmallMat<T>& a, const SmallVec<T>& v)
{
    const int n = a.dim();
    SmallVec<T> out(n);
    for (int i = 0; i < n; ++i) {
        T acc = a(i, 0) * v[0];
        for (int k = 1; k < n; ++k) {
            acc += a(i, k) * v[k];
        }
        out[i] = acc;
    }
    return out;
}

template <class T>
SmallMat<T> operator+(SmallMat<T> a, const SmallMat<T>& b)
{
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            a(i, j) += b(i, j);
        }
    }
    return a;
}

template <class T>
SmallMat<T> operator-(SmallMat<T> a, const SmallMat<T>& b)
{
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            a(i, j) -= b(i, j);
        }
    }
    return a;
}

template <class T, ScalarLike S>
SmallMat<T> operator*(const S& s, SmallMat<T> a)
{
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            a(i, j) = s * a(i, j);
        }
    }
    return a;
}

template <class T>
SmallVec<T> operator+(SmallVec<T> a, const SmallVec<T>& b)
{
    for (int i = 0; i < a.size(); ++i) {
        a[i] += b[i];
    }
    return a;
}

template <class T>
SmallVec<T> operator-(SmallVec<T> a, const SmallVec<T>& b)
{
    for (int i = 0; i < a.size(); ++i) {
        a[i] -= b[i];
    }
    return a;
}

template <class T, ScalarLike S>
SmallVec<T> operator*(const S& s, SmallVec<T> a)
{
    for (int i = 0; i < a.size(); ++i) {
        a[i] = s * a[i];
    }
    return a;
}

template <class T>
SmallMat<T> transpose(const SmallMat<T>& a)
{
    SmallMat<T> t(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            t(i, j) = a(j, i);
        }
    }
    return t;
}

/// Plain bilinear product a^T b (no conjugation).
template <class T>
T dot(const SmallVec<T>& a, const SmallVec<T>& b)
{
    T acc = a[0] * b[0];
    for (int i = 1; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

template <class T>
SmallMat<T> outer(const SmallVec<T>& a, const SmallVec<T>& b)
{
    SmallMat<T> m(a.size());
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < b.size(); ++j) {
            m(i, j) = a[i] * b[j];
        }
    }
    return m;
}

inline std::complex<double> trace(const CMat& a)
{
    std::complex<double> t = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        t += a(i, i);
    }
    return t;
}

inline double max_abs(const CMat& a)
{
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            m = std::max(m, std::abs(a(i, j)));
        }
    }
    return m;
}

inline double max_abs(const CVec& v)
{
    double m = 0.0;
    for (const auto& c : v) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

inline double norm2(const CVec& v)
{
    double s = 0.0;
    for (const auto& c : v) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

inline bool all_finite(const CVec& v)
{
    for (const auto& c : v) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            return false;
        }
    }
    return true;
}

} // namespace rogue
