#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "rogue/cmat.hpp"
#include "rogue/jet.hpp"

namespace testing {

using rogue::cplx;
inline constexpr cplx kI{0.0, 1.0};

inline bool close(cplx a, cplx b, double rel, double abs_floor = 0.0)
{
    return std::abs(a - b) <= std::max(rel * std::abs(b), abs_floor);
}

inline double rel_err(const rogue::CVec& a, const rogue::CVec& b)
{
    const double n = rogue::norm2(b);
    return n > 0.0 ? rogue::norm2(a - b) / n : rogue::norm2(a - b);
}

inline rogue::CVec vec(std::initializer_list<cplx> v)
{
    return rogue::CVec(v);
}

inline rogue::Jet random_jet(std::mt19937_64& rng, int order, double scale)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    rogue::Jet j(order);
    for (int k = 0; k <= order; ++k) {
        j[k] = cplx(u(rng), u(rng));
    }
    return j;
}

} // namespace testing

#include <functional>
#include <numbers>
#include <vector>

#include "rogue/ddtchain.hpp"
#include "rogue/expansion.hpp"
#include "rogue/laxcore.hpp"

namespace testing {

/// Taylor coefficients 0..n_max of an entire vector function of e, by the
/// trapezoidal rule on the circle |e| = radius.
inline std::vector<rogue::CVec> contour_coefficients(const std::function<rogue::CVec(cplx)>& f, int n_max,
                                                     double radius = 0.25, int nodes = 64)
{
    std::vector<rogue::CVec> out;
    std::vector<rogue::CVec> samples;
    std::vector<cplx> unit;
    for (int k = 0; k < nodes; ++k) {
        const cplx u = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
        unit.push_back(u);
        samples.push_back(f(radius * u));
    }
    for (int n = 0; n <= n_max; ++n) {
        rogue::CVec acc(samples.front().size());
        for (int k = 0; k < nodes; ++k) {
            acc = acc + std::pow(unit[static_cast<std::size_t>(k)], -n) * samples[static_cast<std::size_t>(k)];
        }
        out.push_back((1.0 / (nodes * std::pow(radius, n))) * acc);
    }
    return out;
}

/// Closed-form eigenfunction Lambda R E omega(e) at lambda = i rho (1 + e).
inline std::function<rogue::CVec(cplx)> closed_eigenfunction(const rogue::ResolvedWave& w, double x, double t)
{
    return [w, x, t](cplx e) {
        rogue::CVec om(w.setup.dim());
        cplx p = 1.0;
        for (const rogue::CVec& c : w.omega) {
            om = om + p * c;
            p *= e;
        }
        return rogue::fundamental_solution(w.setup, kI * w.setup.rho() * (1.0 + e), x, t, om);
    };
}

/// psi^[N] built level by level from finite-e dressing:
/// Delta[m] is the e^m coefficient of T[m](e) ... T[1](e) Psi(e), where
/// T[k](e) = (lambda + lambda1) I - 2 lambda1 P[k] and P[k] comes from Delta[k-1].
inline rogue::Paired<rogue::CVec> contour_dressing(const rogue::ResolvedWave& w, double x, double t, int sign)
{
    const rogue::SpectralSetup& s = w.setup;
    const cplx lam1 = s.lambda1();
    std::vector<rogue::CMat> ph, pm;
    rogue::Paired<rogue::CVec> q{rogue::seed_potential(s, t), rogue::seed_potential(s, -t)};
    for (int m = 0; m < w.order; ++m) {
        auto dressed = [&](double tt, const std::vector<rogue::CMat>& ps) {
            const auto base = closed_eigenfunction(w, x, tt);
            return [&s, lam1, ps, base](cplx e) {
                rogue::CVec v = base(e);
                const cplx lam = kI * s.rho() * (1.0 + e);
                for (const rogue::CMat& p : ps) {
                    v = ((lam + lam1) * rogue::identity(s.dim()) - (2.0 * lam1) * p) * v;
                }
                return v;
            };
        };
        const rogue::CVec dh = contour_coefficients(dressed(t, ph), m)[static_cast<std::size_t>(m)];
        const rogue::CVec dm = contour_coefficients(dressed(-t, pm), m)[static_cast<std::size_t>(m)];
        const cplx den = rogue::dot(dm, dh);
        ph.push_back((1.0 / den) * rogue::outer(dh, dm));
        pm.push_back((1.0 / den) * rogue::outer(dm, dh));
        for (int j = 1; j < s.dim(); ++j) {
            q.here[j - 1] += static_cast<double>(sign) * 4.0 * kI * lam1 * dm[0] * dh[j] / den;
            q.mirror[j - 1] += static_cast<double>(sign) * 4.0 * kI * lam1 * dh[0] * dm[j] / den;
        }
    }
    return q;
}

} // namespace testing
