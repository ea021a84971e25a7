#include "rogue/laxcore.hpp"

#include <cmath>

namespace rogue {
namespace {

constexpr cplx kI{0.0, 1.0};

// |sqrt(w)| below this switches to the truncated Taylor series.
constexpr double kSeriesCutoff = 1e-4;

CMat theta_block(const SpectralSetup& setup, cplx lambda)
{
    CMat th(setup.dim());
    th(0, 0) = lambda;
    th(0, 1) = kI * setup.rho();
    th(1, 0) = -kI * setup.rho();
    th(1, 1) = -lambda;
    return th;
}

} // namespace

SpectralSetup::SpectralSetup(double rho, int dim)
    : rho_(rho), dim_(dim)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw UsageError("rho must be positive and finite");
    }
    if (dim != 2 && dim != 3) {
        throw UsageError("dimension must be 2 (scalar) or 3 (vector)");
    }
}

CVec seed_potential(const SpectralSetup& setup, double t)
{
    const double rho = setup.rho();
    CVec q(setup.components());
    q[0] = rho * std::exp(kI * (2.0 * rho * rho * t));
    return q;
}

ThetaOmega theta_omega(const SpectralSetup& setup, cplx lambda)
{
    CMat th = theta_block(setup, lambda);
    if (setup.dim() == 3) {
        th(2, 2) = -lambda;
    }
    const cplx tau2 = lambda * lambda + setup.rho() * setup.rho();
    CMat om = th * th + (2.0 * lambda) * th - tau2 * identity(setup.dim());
    return {th, om};
}

cplx cos_sqrt(cplx w)
{
    if (std::abs(w) < kSeriesCutoff * kSeriesCutoff) {
        return 1.0 - w / 2.0 + w * w / 24.0;
    }
    return std::cos(std::sqrt(w));
}

cplx sinc_sqrt(cplx w)
{
    if (std::abs(w) < kSeriesCutoff * kSeriesCutoff) {
        return 1.0 - w / 6.0 + w * w / 120.0;
    }
    const cplx z = std::sqrt(w);
    return std::sin(z) / z;
}

ExpFactors closed_re(const SpectralSetup& setup, cplx lambda, double x, double t)
{
    const int dim = setup.dim();
    const double rho = setup.rho();
    const CMat th = theta_block(setup, lambda);
    const cplx tau2 = lambda * lambda + rho * rho;
    const cplx xi2 = 4.0 * lambda * lambda * tau2;

    // On the 2x2 block Theta^2 = tau^2 I, hence Omega = 2 lambda Theta there.
    const cplx wx = tau2 * x * x;
    const cplx wt = xi2 * t * t;
    const cplx cx = cos_sqrt(wx);
    const cplx sx = kI * x * sinc_sqrt(wx);
    const cplx ct = cos_sqrt(wt);
    const cplx st = kI * 2.0 * lambda * t * sinc_sqrt(wt);

    CMat r(dim);
    CMat e(dim);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cplx diag = i == j ? 1.0 : 0.0;
            r(i, j) = cx * diag + sx * th(i, j);
            e(i, j) = ct * diag + st * th(i, j);
        }
    }

    CMat lam(dim);
    const cplx phase = std::exp(kI * (rho * rho * t));
    lam(0, 0) = 1.0 / phase;
    lam(1, 1) = phase;
    if (dim == 3) {
        r(2, 2) = std::exp(-kI * lambda * x);
        e(2, 2) = std::exp(-kI * (rho * rho + 2.0 * lambda * lambda) * t);
        lam(2, 2) = phase;
    }
    return {r, e, lam};
}

CVec fundamental_solution(const SpectralSetup& setup, cplx lambda, double x, double t, const CVec& z)
{
    const ExpFactors f = closed_re(setup, lambda, x, t);
    return f.lambda * (f.r * (f.e * z));
}

CMat potential_matrix(const CVec& q_here, const CVec& q_mirror)
{
    const int dim = q_here.size() + 1;
    CMat q(dim);
    for (int j = 0; j < q_here.size(); ++j) {
        q(j + 1, 0) = q_here[j];
        q(0, j + 1) = -q_mirror[j];
    }
    return q;
}

LaxPair lax_matrices(const SpectralSetup& setup, cplx lambda, const CVec& q_here, const CVec& q_mirror,
                     const CVec& qx_here, const CVec& qx_mirror)
{
    return lax_matrices(setup, lambda, potential_matrix(q_here, q_mirror), potential_matrix(qx_here, qx_mirror));
}

LaxPair lax_matrices(const SpectralSetup& setup, cplx lambda, const CMat& q, const CMat& qx)
{
    const CMat s3 = sigma3(setup.dim());
    CMat u = (kI * lambda) * s3 + q;
    CMat v = (2.0 * kI * lambda * lambda) * s3 + (2.0 * lambda) * q + kI * (s3 * (q * q - qx));
    return {u, v};
}

namespace detail {

ExpFactors closed_re_branch(const SpectralSetup& setup, cplx lambda, double x, double t, int branch)
{
    const double rho = setup.rho();
    const cplx tau = static_cast<double>(branch) * std::sqrt(lambda * lambda + rho * rho);
    const cplx xi = 2.0 * lambda * tau;
    ExpFactors f = closed_re(setup, lambda, x, t);

    const cplx sx = std::sin(tau * x);
    const cplx cx = std::cos(tau * x);
    f.r(0, 0) = (tau * cx + kI * lambda * sx) / tau;
    f.r(0, 1) = -rho * sx / tau;
    f.r(1, 0) = rho * sx / tau;
    f.r(1, 1) = (tau * cx - kI * lambda * sx) / tau;

    const cplx st = std::sin(xi * t);
    const cplx ct = std::cos(xi * t);
    f.e(0, 0) = (xi * ct + 2.0 * kI * lambda * lambda * st) / xi;
    f.e(0, 1) = -2.0 * lambda * rho * st / xi;
    f.e(1, 0) = 2.0 * lambda * rho * st / xi;
    f.e(1, 1) = (xi * ct - 2.0 * kI * lambda * lambda * st) / xi;
    return f;
}

} // namespace detail
} // namespace rogue
