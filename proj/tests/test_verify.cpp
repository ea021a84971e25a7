#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rogue/presets.hpp"
#include "rogue/verify.hpp"

using namespace rogue;
using testing::kI;

namespace {

PairedEval seed_eval(double rho)
{
    return [rho](double, double t) {
        return Paired<CVec>{CVec{rho * std::exp(2.0 * kI * rho * rho * t)},
                            CVec{rho * std::exp(-2.0 * kI * rho * rho * t)}};
    };
}

Field synthetic_field(const FieldGrid& g)
{
    Field f;
    f.grid = g;
    f.components = 1;
    f.values.assign(g.size(), cplx(1.0));
    f.pole.assign(g.size(), 0);
    f.den_product.assign(g.size(), cplx(1.0));
    return f;
}

std::size_t node(const FieldGrid& g, int i, int j)
{
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) + static_cast<std::size_t>(i);
}

} // namespace

TEST_CASE("verify: finite differences on closed forms")
{
    const std::function<cplx(double, double)> wave = [](double, double t) { return std::exp(2.0 * kI * t); };
    CHECK(std::abs(fd_diff(wave, {0.0, 0.3}, Axis::T, 1, 1e-3) - 2.0 * kI * std::exp(0.6 * kI)) <= 1e-10);
    const std::function<cplx(double, double)> sq = [](double x, double) { return cplx(x * x); };
    CHECK(std::abs(fd_diff(sq, {1.7, 0.0}, Axis::X, 2, 1e-2) - 2.0) <= 1e-9);

    const std::function<cplx(double, double)> s = [](double x, double) { return cplx(std::sin(x)); };
    const double e1 = std::abs(fd_diff(s, {0.4, 0.0}, Axis::X, 1, 0.1) - std::cos(0.4));
    const double e2 = std::abs(fd_diff(s, {0.4, 0.0}, Axis::X, 1, 0.05) - std::cos(0.4));
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("verify: the seed is an exact solution")
{
    for (double rho : {0.5, 1.0, 2.0}) {
        const CVec r = pde_residual(seed_eval(rho), {0.7, -0.4}, 1e-3, Equation::NonlocalScalar);
        CHECK(normalized_residual(r, CVec{rho}) <= 1e-8);
    }
}

TEST_CASE("verify: Halton points")
{
    const Window w{-1.0, 1.0, 0.0, 3.0};
    const Point p1 = halton_point(1, w);
    CHECK(p1.x == doctest::Approx(0.0));
    CHECK(p1.t == doctest::Approx(1.0));
    const Point p2 = halton_point(2, w);
    CHECK(p2.x == doctest::Approx(-0.5));
    CHECK(p2.t == doctest::Approx(2.0));
    const auto pts = halton_points(50, w);
    CHECK(pts.size() == 50);
    for (const Point& p : pts) {
        CHECK((p.x >= w.x0 && p.x <= w.x1 && p.t >= w.t0 && p.t <= w.t1));
    }
}

TEST_CASE("verify: first-order residual is small and local residual is not")
{
    const ResolvedWave w = resolve(preset("fig1").spec);
    const PairedEval f = wave_evaluator(w, w.order);
    const auto pts = halton_points(8, {-3.0, 3.0, -3.0, 3.0});
    const ResidualReport nonlocal = residual_report(f, pts, Equation::NonlocalScalar, 1e-4);
    CHECK(nonlocal.passed);
    CHECK(nonlocal.max_residual() <= 1e-6);
    const ResidualReport local = residual_report(f, pts, Equation::LocalScalar, 1e-4);
    CHECK_FALSE(local.passed);
}

TEST_CASE("verify: sign adjudication")
{
    const ResolvedWave w = resolve(preset("fig1").spec);
    const SignVerdict v = adjudicate_sign(w, {-5.0, 5.0, -5.0, 5.0});
    CHECK(v.sign == kUpdateSign);
    CHECK(v.ratio >= kSignRatio);

    ResolvedWave flat = w;
    for (CVec& o : flat.omega) {
        o = CVec{0.0, 0.0};
    }
    CHECK_THROWS_AS(adjudicate_sign(flat, {-5.0, 5.0, -5.0, 5.0}), AmbiguousSign);
}

TEST_CASE("verify: stencil over a pole")
{
    const ResolvedWave w = resolve(WaveSpec{SpectralSetup(1.0, 2), 1, OmegaSeries{{testing::vec({1.0, kI})}}});
    const PairedEval f = wave_evaluator(w, 1);
    CHECK_THROWS_AS(pde_residual(f, {1e-3, 0.0}, 1e-3, Equation::NonlocalScalar), StencilHitPole);
    const ResidualReport r =
        residual_report(f, {Point{1e-3, 0.0}, Point{0.8, 0.3}}, Equation::NonlocalScalar, 1e-4);
    CHECK(r.skipped == 1);
}

TEST_CASE("verify: census on a synthetic field")
{
    const FieldGrid g{-4.0, 4.0, 9, -4.0, 4.0, 9};
    Field f = synthetic_field(g);
    f.values[node(g, 5, 5)] = 100.0; // (1, 1)
    f.values[node(g, 6, 6)] = 100.0; // (2, 2), diagonal neighbour
    f.values[node(g, 2, 2)] = 3.0;   // (-2, -2)
    const PoleCensus c = pole_census(f, 1.0, 20.0);
    REQUIRE(c.clusters.size() == 2);
    CHECK(c.bands == 2);
    REQUIRE(c.bounded_peaks.size() == 1);
    CHECK(c.bounded_peaks[0].centroid.x == doctest::Approx(-2.0));
    CHECK(c.bounded_peaks[0].height == doctest::Approx(3.0));

    f.values[node(g, 6, 5)] = 100.0; // joins the two
    CHECK(pole_census(f, 1.0, 20.0).clusters.size() == 1);
}

TEST_CASE("verify: census sees a winding denominator below the threshold")
{
    const FieldGrid g{-2.0, 2.0, 5, -2.0, 2.0, 5};
    Field f = synthetic_field(g);
    for (int j = 0; j < g.nt; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            f.den_product[node(g, i, j)] = cplx(g.x_at(i) - 0.5, g.t_at(j) - 0.5);
        }
    }
    const PoleCensus c = pole_census(f, 1.0, 20.0);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.clusters[0].cell_count == 4);
    CHECK(c.clusters[0].centroid.x == doctest::Approx(0.5));
}

TEST_CASE("verify: radial bands")
{
    std::vector<Cluster> cl(3);
    cl[0].radius = 1.0;
    cl[1].radius = 1.1;
    cl[2].radius = 2.0;
    CHECK(radial_bands(cl) == 2);
    CHECK(radial_bands({}) == 0);
}

TEST_CASE("verify: extrema along a profile")
{
    const std::vector<double> x = {0, 1, 2, 3, 4, 5, 6};
    const std::vector<double> v = {1, 3, 1, 0.2, 1, 1, 1};
    const auto hi = find_extrema(x, v, 2.0);
    REQUIRE(hi.size() == 1);
    CHECK(hi[0].coord == 1.0);
    const auto lo = find_extrema(x, v, 0.5, true);
    REQUIRE(lo.size() == 1);
    CHECK(lo[0].coord == 3.0);
}

TEST_CASE("verify: far field returns to the background")
{
    const ResolvedWave w = resolve(preset("fig1").spec);
    const BackgroundReport r = background_check(w, 50.0, {-50.0, 0.0, 50.0}, 1e-2);
    CHECK(r.passed);
    CHECK(r.samples.size() == 6);
}

TEST_CASE("verify: Lax checks on the seed")
{
    const SpectralSetup s(1.0, 2);
    const LaxCheckReport r = lax_check(s, cplx(0.3, 0.8), testing::vec({1.0, 0.5 * kI}), {-2.0, 2.0, -2.0, 2.0});
    CHECK(r.passed());
}
