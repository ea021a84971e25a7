#pragma once

// Plane-wave seed, spectral matrices and the closed-form fundamental solution
// of the reverse-time nonlocal NLS Lax pair, for the scalar (2x2) and the
// two-component vector (3x3) problem.

#include <complex>

#include "rogue/cmat.hpp"

namespace rogue {

using cplx = std::complex<double>;

/// Background amplitude and problem dimension (2 scalar, 3 vector). The
/// dressing point is fixed at lambda1 = i rho.
class SpectralSetup {
public:
    SpectralSetup(double rho, int dim);

    double rho() const noexcept { return rho_; }
    int dim() const noexcept { return dim_; }
    int components() const noexcept { return dim_ - 1; }
    cplx lambda1() const noexcept { return {0.0, rho_}; }

    friend bool operator==(const SpectralSetup&, const SpectralSetup&) = default;

private:
    double rho_;
    int dim_;
};

/// Seed potential: (rho e^{2 i rho^2 t}) or (rho e^{2 i rho^2 t}, 0).
CVec seed_potential(const SpectralSetup& setup, double t);

struct ThetaOmega {
    CMat theta;
    CMat omega;
};

/// Theta and Omega = Theta^2 + 2 lambda Theta - (lambda^2 + rho^2) I.
ThetaOmega theta_omega(const SpectralSetup& setup, cplx lambda);

/// cos(sqrt(w)), even in sqrt(w) and therefore branch independent.
cplx cos_sqrt(cplx w);
/// sin(sqrt(w)) / sqrt(w), with the removable singularity at w = 0.
cplx sinc_sqrt(cplx w);

struct ExpFactors {
    CMat r;      // exp(i Theta x)
    CMat e;      // exp(i Omega t)
    CMat lambda; // diag(e^{-i rho^2 t}, e^{i rho^2 t}[, e^{i rho^2 t}])
};

/// R, E and the diagonal prefactor, evaluated through cos/sinc of the squared
/// arguments so that tau = 0 and xi = 0 need no special casing.
ExpFactors closed_re(const SpectralSetup& setup, cplx lambda, double x, double t);

/// Lambda(t) R(x) E(t) Z.
CVec fundamental_solution(const SpectralSetup& setup, cplx lambda, double x, double t, const CVec& z);

struct LaxPair {
    CMat u;
    CMat v;
};

/// Q carries q_here in its first column and -q_mirror in its first row.
CMat potential_matrix(const CVec& q_here, const CVec& q_mirror);

/// U = i lambda s3 + Q,  V = 2 i lambda^2 s3 + 2 lambda Q + i s3 (Q^2 - Q_x).
LaxPair lax_matrices(const SpectralSetup& setup, cplx lambda, const CVec& q_here, const CVec& q_mirror,
                     const CVec& qx_here, const CVec& qx_mirror);

/// Same from an assembled potential matrix and its x-derivative.
LaxPair lax_matrices(const SpectralSetup& setup, cplx lambda, const CMat& q, const CMat& qx);

namespace detail {
/// R and E from the textbook form with an explicit choice of tau = +-sqrt(tau^2).
/// Undefined at tau = 0; used to check branch independence of closed_re.
ExpFactors closed_re_branch(const SpectralSetup& setup, cplx lambda, double x, double t, int branch);
} // namespace detail

} // namespace rogue
