#pragma once

// Finite-difference residuals, Lax-pair checks, sign adjudication and the
// singular-peak census.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rogue/ddtchain.hpp"
#include "rogue/expansion.hpp"
#include "rogue/field.hpp"
#include "rogue/laxcore.hpp"

namespace rogue {

/// A pole fell inside a finite-difference stencil.
class StencilHitPole : public std::runtime_error {
public:
    explicit StencilHitPole(int level)
        : std::runtime_error("pole inside stencil at level " + std::to_string(level)), level_(level)
    {}
    int level() const noexcept { return level_; }

private:
    int level_;
};

/// The two update signs could not be told apart.
class AmbiguousSign : public std::runtime_error {
public:
    AmbiguousSign(const std::string& what, double ratio)
        : std::runtime_error(what), ratio_(ratio)
    {}
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

struct Point {
    double x;
    double t;
};

struct Window {
    double x0, x1, t0, t1;
};

/// Radical-inverse Halton point k (bases 2 and 3) mapped into the window.
Point halton_point(std::size_t k, const Window& w);
/// count points from index skip + 1 on.
std::vector<Point> halton_points(std::size_t count, const Window& w, std::size_t skip = 0);

enum class Axis { X, T };

/// Fourth-order central differences.
///   f'  ~ (-f2 + 8 f1 - 8 f-1 + f-2) / (12 h)
///   f'' ~ (-f2 + 16 f1 - 30 f0 + 16 f-1 - f-2) / (12 h^2)
/// SingularPoint raised by the evaluator becomes StencilHitPole.
CVec fd_diff(const std::function<CVec(double, double)>& f, Point at, Axis axis, int degree, double h);
cplx fd_diff(const std::function<cplx(double, double)>& f, Point at, Axis axis, int degree, double h);

/// psi and its time mirror at one point.
using PairedEval = std::function<Paired<CVec>(double, double)>;

/// psi^[level] of the wave through the reference chain. Throws SingularPoint
/// when the chain collapses at or below that level.
PairedEval wave_evaluator(const ResolvedWave& wave, int level, const DressOptions& options = {});

enum class Equation { NonlocalScalar, NonlocalVector, LocalScalar };

/// Residual i psi_t + psi_xx + nonlinear term, per component. The mirror value
/// comes from the paired evaluation at the centre point.
CVec pde_residual(const PairedEval& f, Point at, double h, Equation eq);

/// |r| / (1 + |psi| + |psi|^3).
double normalized_residual(const CVec& r, const CVec& psi);

struct ResidualReport {
    std::vector<Point> points;
    std::vector<double> residuals;          // at the finest step
    std::vector<std::vector<double>> sweep; // [point][step]
    std::vector<double> h_sequence;
    std::size_t skipped = 0;                // stencils that hit a pole
    double estimated_order = 0.0;           // NaN when every pair sits on the floor
    std::size_t order_samples = 0;
    double tolerance = 0.0;
    bool passed = false;

    double max_residual() const;
};

inline const std::vector<double> kDefaultSteps = {4e-3, 2e-3, 1e-3};

/// Default relative evaluation noise in units of machine epsilon, for the
/// roundoff floor of the convergence-order estimate. A step pair counts
/// towards the order only when its finer residual exceeds kFloorMargin times
/// the floor noise * (stencil weight) / h^degree.
inline constexpr double kNoiseUlps = 2.0;
inline constexpr double kFloorMargin = 10.0;

/// Relative evaluation noise of a point evaluator at (x, t).
using NoiseEstimate = std::function<double(double, double)>;

/// Relative noise of f sampled from sixth differences at a step far below
/// any smooth scale, along both axes (never below kNoiseUlps ulps).
NoiseEstimate sampled_noise(const PairedEval& f);

/// Residual sweep of a constructed solution over the points. Without a noise
/// estimate the floor uses sampled_noise(f).
ResidualReport residual_report(const PairedEval& f, const std::vector<Point>& points, Equation eq,
                               double tolerance, const std::vector<double>& steps = kDefaultSteps,
                               const NoiseEstimate& noise = {});

struct LaxCheckReport {
    ResidualReport lax;        // Psi_x = U Psi, Psi_t = V Psi
    ResidualReport adjoint;    // Phi = Psi^T(x, -t) at -lambda: Phi_x = -Phi U, Phi_t = -Phi V
    ResidualReport covariance; // T Psi solves the Lax pair of the dressed potential
    bool passed() const { return lax.passed && adjoint.passed && covariance.passed; }
};

struct LaxCheckOptions {
    double tolerance = 1e-6;
    std::vector<double> steps = kDefaultSteps;
    std::size_t samples = 20;
};

/// Lax, adjoint and one-step covariance checks on the seed background.
LaxCheckReport lax_check(const SpectralSetup& setup, cplx lambda, const CVec& z, const Window& window,
                         const LaxCheckOptions& options = {});

struct SignVerdict {
    int sign = 0;
    double ratio = 0.0;
    double median_plus = 0.0;
    double median_minus = 0.0;
    std::size_t samples = 0;
};

inline constexpr double kSignRatio = 1e3;

/// Median normalized nonlocal residual of psi^[N] under both signs over
/// non-pole Halton points; throws AmbiguousSign below kSignRatio.
SignVerdict adjudicate_sign(const ResolvedWave& wave, const Window& window, std::size_t samples = 25,
                            double h = 1e-3);

struct Cluster {
    Point centroid;
    std::size_t cell_count = 0;
    double peak_magnitude = 0.0;
    double radius = 0.0; // hypot(rho x, 2 rho^2 t) of the centroid
};

struct BoundedPeak {
    Point centroid;
    double height = 0.0;
};

struct PoleCensus {
    Window window;
    double threshold = 0.0;
    std::vector<Cluster> clusters;
    std::vector<BoundedPeak> bounded_peaks;
    int bands = 0;
};

inline constexpr double kDefaultCensusFactor = 20.0;
inline constexpr double kBandRatio = 1.3;

/// Nodes are hot when |psi| >= threshold, when flagged as poles, or when they
/// bound a cell around which the phase of the denominator product winds.
/// Clusters are 4-connected components of hot nodes. Bounded peaks are local
/// maxima in (1.5 rho, threshold) away from every hot node.
PoleCensus pole_census(const Field& field, double rho, double threshold);

/// Number of radial bands: sorted centroid radii split wherever consecutive
/// radii differ by a factor >= kBandRatio.
int radial_bands(const std::vector<Cluster>& clusters);

struct BackgroundSample {
    Point at;
    CVec psi;
    double deviation = 0.0; // | |psi_1| - rho |
};

struct BackgroundReport {
    std::vector<BackgroundSample> samples;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// psi^[N] at (+-radius, t) for each t.
BackgroundReport background_check(const ResolvedWave& wave, double radius, const std::vector<double>& t_samples,
                                  double tolerance);

struct Profile {
    std::vector<double> coord;
    std::vector<CVec> psi;
    std::vector<double> magnitude(int component) const;
};

/// psi^[N] along x at fixed t.
Profile slice_x(const ResolvedWave& wave, double t, double x0, double x1, int n);

struct SlicePeak {
    std::size_t index;
    double coord;
    double value;
};

/// Strict local maxima above height (minima below it when find_minima).
std::vector<SlicePeak> find_extrema(const std::vector<double>& coord, const std::vector<double>& values,
                                    double height, bool find_minima = false);

} // namespace rogue
