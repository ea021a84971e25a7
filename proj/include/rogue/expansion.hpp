#pragma once

// Expansion of the fundamental solution about the degenerate spectral point
// lambda = i rho (1 + e).
//
// Two independent routes produce the e-coefficients of R and E:
//   * closed binomial sums over the monomials A_m = (rho x)^m / m! and
//     B_m = (2 rho^2 t)^m / m!  (coefficient_tables / matrices_n), and
//   * truncated power-series arithmetic on tau^2(e) = -rho^2 e (2 + e)
//     (series_exp / oracle_jets).
// psi_expansion can assemble Psi_n from either route; the two are compared
// by the verification suites.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rogue/cmat.hpp"
#include "rogue/jet.hpp"
#include "rogue/laxcore.hpp"

namespace rogue {

inline constexpr int kMaxWaveOrder = 10;

enum class Monomial { A, B, ATilde, BTilde };

/// A_m = rho^m u^m / m!, B_m = rho^{2m} 2^m u^m / m! (tilde forms identical
/// with the vector amplitude). Zero for m < 0.
double ab_poly(Monomial kind, int m, double rho, double u);

/// C(n, k) as a double; zero when k is outside [0, n].
double binomial(int n, int k);

struct CoeffTables {
    int n_max = 0;
    int dim = 2;
    double rho = 1.0;
    double x = 0.0;
    double t = 0.0;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::vector<double> theta;
    std::vector<double> a_tilde; // dim 3 only
    std::vector<cplx> rho3;      // dim 3 only

    /// beta_n with beta_{-1} = 0.
    double beta_at(int n) const { return n < 0 ? 0.0 : beta[static_cast<std::size_t>(n)]; }
    /// theta_n with theta_{-1} = 0.
    double theta_at(int n) const { return n < 0 ? 0.0 : theta[static_cast<std::size_t>(n)]; }
};

CoeffTables coefficient_tables(int n_max, double rho, double x, double t, int dim = 2);

struct CoeffRow {
    std::string name; // alpha, beta, gamma, theta, a_tilde, rho
    int n = 0;
    cplx formula;
    cplx oracle;

    double abs_error() const { return std::abs(formula - oracle); }
    /// |formula - oracle| / |oracle|, or the absolute error when the oracle is 0.
    double rel_error() const;
    /// Relative agreement with an absolute floor for vanishing coefficients.
    bool agrees(double rel_tol, double abs_floor) const;
};

/// Every table coefficient beside the same coefficient read off oracle_jets:
/// alpha and beta from R, gamma and theta from E, and for dim 3 a_tilde and
/// rho from the third diagonal entries with their exponential factors removed.
std::vector<CoeffRow> compare_coefficients(int n_max, double rho, double x, double t, int dim = 2);

struct MatPair {
    CMat r;
    CMat e;
};

/// R_n and E_n. The E_n off-diagonal is +-i theta_n and the vector rho_n uses
/// B_{n-l}; both forms are what the series route produces.
MatPair matrices_n(const SpectralSetup& setup, int n, const CoeffTables& tables);

using JetMat = SmallMat<Jet>;
using JetVec = SmallVec<Jet>;

struct SeriesMatrices {
    JetMat r;
    JetMat e;
};

/// exp(i Theta(e) x0(e)) and exp(i Omega(e) t0(e)) at lambda = i rho (1 + e),
/// with jet-valued x0 and t0 of a common order.
SeriesMatrices series_exp(const SpectralSetup& setup, const Jet& x0, const Jet& t0);

/// series_exp at constant (x, t): the e-expansion of R and E entry by entry.
SeriesMatrices oracle_jets(const SpectralSetup& setup, double x, double t, int n_max);

struct OmegaSeries {
    std::vector<CVec> omega; // omega_k, k = 0, 1, ...
    friend bool operator==(const OmegaSeries&, const OmegaSeries&) = default;
};

/// omega(e) = exp(i Theta x0(e) + i Omega t0(e)) l with x0 = sum r_j e^j,
/// t0 = sum s_j e^j.
struct GeneratingForm {
    CVec l;
    std::vector<cplx> r;
    std::vector<cplx> s;
    friend bool operator==(const GeneratingForm&, const GeneratingForm&) = default;
};

struct WaveSpec {
    SpectralSetup setup;
    int order = 1;
    std::variant<OmegaSeries, GeneratingForm> source;

    /// Throws UsageError on an invalid parameterisation.
    void validate() const;
    friend bool operator==(const WaveSpec&, const WaveSpec&) = default;
};

/// omega_k for k = 0..n_max (zero-padded; generated for the generating form).
std::vector<CVec> omega_coefficients(const WaveSpec& spec, int n_max);

/// A spec with its omega coefficients resolved once, for per-point evaluation.
struct ResolvedWave {
    SpectralSetup setup;
    int order;
    std::vector<CVec> omega; // size order + 1
};

ResolvedWave resolve(const WaveSpec& spec);

enum class ExpansionPath { Tables, Jets };

/// Psi_0..Psi_N at (x, t): Psi_n = Lambda sum_{k+j+m=n} R_k E_j omega_m.
std::vector<CVec> psi_expansion(const ResolvedWave& wave, double x, double t,
                                ExpansionPath path = ExpansionPath::Tables);

inline std::vector<CVec> psi_expansion(const WaveSpec& spec, double x, double t,
                                       ExpansionPath path = ExpansionPath::Tables)
{
    return psi_expansion(resolve(spec), x, t, path);
}

} // namespace rogue
