#pragma once

// Generalized Darboux-dressing chain at one point and its time mirror.
//
// Every quantity is carried as a pair (value at (x, t), value at (x, -t));
// the projector at (x, t) needs the eigenfunction at both points, so the two
// chains run in lockstep.

#include <optional>
#include <vector>

#include "rogue/cmat.hpp"
#include "rogue/expansion.hpp"
#include "rogue/laxcore.hpp"

#ifndef ROGUE_UPDATE_SIGN
#define ROGUE_UPDATE_SIGN -1
#endif

namespace rogue {

/// Sign of the 4 i lambda1 correction in the potential update. Fixed by the
/// sign adjudication experiment (verify::adjudicate_sign).
inline constexpr int kUpdateSign = ROGUE_UPDATE_SIGN;
static_assert(kUpdateSign == 1 || kUpdateSign == -1, "ROGUE_UPDATE_SIGN must be +1 or -1");

/// |den| < tol * |here| * |mirror| marks a collapsed projector.
inline constexpr double kDefaultPoleTolerance = 1e-10;

template <class T>
struct Paired {
    T here;
    T mirror;
};

struct Projector {
    Paired<CMat> p;
    Paired<cplx> den;
};

/// P = D(x,t) D^T(x,-t) / (D^T(x,-t) D(x,t)) and its mirror.
/// Throws SingularPoint(level) when the denominator collapses.
Projector projector(const Paired<CVec>& delta, int level = 1, double pole_tolerance = kDefaultPoleTolerance);

struct ChainOptions {
    double pole_tolerance = kDefaultPoleTolerance;
    /// Also evolve the orders below the current level, which must vanish.
    bool track_lower_orders = false;
};

struct ChainResult {
    std::vector<Paired<CVec>> deltas;       // Delta[0..N-1]
    std::vector<Paired<CMat>> projectors;   // P[1..N]
    std::vector<Paired<cplx>> denominators; // level 1..N
    std::vector<double> relative_denominators;
    std::vector<double> kernel_residuals;      // |T[n] Delta[n-1]| / (2 |lambda1| |Delta[n-1]|)
    std::vector<double> lower_order_residuals; // only with track_lower_orders
    std::vector<Paired<CVec>> solutions;       // psi^[0..N]; filled by dress()
    std::optional<int> pole;                   // first level whose denominator collapsed
};

/// Runs the triangular recursion
///   Y^(0)_n = Psi_n,  Y^(m)_n = T[m] Y^(m-1)_n + lambda1 Y^(m-1)_{n-1},
///   T[m] = 2 lambda1 (I - P[m]),  P[m] built from Delta[m-1] = Y^(m-1)_{m-1}.
/// Stops at the first collapsed denominator.
ChainResult chain(const Paired<std::vector<CVec>>& psi, const SpectralSetup& setup, const ChainOptions& options = {});

/// psi^[n] = psi^[n-1] + sign * 4 i lambda1 phi0(x,-t) (phi1, ...)(x,t) / (Delta^T(x,-t) Delta(x,t)).
Paired<CVec> update_potential(const Paired<CVec>& prev, const Paired<CVec>& delta, const SpectralSetup& setup,
                              int sign = kUpdateSign, double pole_tolerance = kDefaultPoleTolerance);

/// Q0 + 2 i lambda1 [s3, P] as a full matrix.
CMat dressed_potential_matrix(const CVec& q_here, const CVec& q_mirror, const CMat& p, const SpectralSetup& setup);

/// Potential pair read off Q1 = Q0 + 2 i lambda1 [s3, P] at both points.
Paired<CVec> q_commutator_update(const Paired<CVec>& prev, const Paired<CMat>& p, const SpectralSetup& setup);

struct DressOptions {
    int sign = kUpdateSign;
    double pole_tolerance = kDefaultPoleTolerance;
    ExpansionPath path = ExpansionPath::Tables;
    bool track_lower_orders = false;
};

/// Multiplies each sequence by an exact power of two so its largest entry is
/// O(1). Projectors and potential updates are invariant under this scaling.
void normalize_expansion(std::vector<CVec>& psi);

/// Full chain plus potential updates at (x, t) and (x, -t).
ChainResult dress(const ResolvedWave& wave, double x, double t, const DressOptions& options = {});

struct RoguePoint {
    std::vector<CVec> psi;           // psi^[0..N] at (x, t); +inf entries from the pole level on
    std::optional<int> pole;
    std::vector<cplx> denominators;  // per level, at (x, t)
    std::vector<double> relative_denominators;
};

RoguePoint rogue_point(const ResolvedWave& wave, double x, double t, const DressOptions& options = {});

} // namespace rogue
