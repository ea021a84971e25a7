#include <doctest.h>

#include <cstring>

#include "helpers.hpp"
#include "rogue/ddtchain.hpp"
#include "rogue/presets.hpp"
#include "rogue/verify.hpp"

using namespace rogue;
using testing::close;
using testing::kI;

namespace {

// Scalar wave with omega_0 = (1, i): Delta^T Delta = 1 + i^2 = 0 at the origin.
ResolvedWave pole_at_origin()
{
    return resolve(WaveSpec{SpectralSetup(1.0, 2), 1, OmegaSeries{{testing::vec({1.0, kI})}}});
}

} // namespace

TEST_CASE("ddtchain: projector on a basis vector")
{
    const Projector p = projector({testing::vec({1.0, 0.0}), testing::vec({1.0, 0.0})});
    CHECK(p.den.here == cplx(1.0));
    CHECK(p.p.here(0, 0) == cplx(1.0));
    CHECK(p.p.here(0, 1) == cplx(0.0));
    CHECK(p.p.here(1, 0) == cplx(0.0));
    CHECK(p.p.here(1, 1) == cplx(0.0));
}

TEST_CASE("ddtchain: projector identities")
{
    const CVec h = testing::vec({1.0, 2.0 * kI, -0.5});
    const CVec m = testing::vec({3.0, 1.0, 0.25 * kI});
    const Projector p = projector({h, m});
    CHECK(close(trace(p.p.here), 1.0, 1e-15));
    CHECK(close(trace(p.p.mirror), 1.0, 1e-15));
    CHECK(max_abs(p.p.here * p.p.here - p.p.here) <= 1e-15 * max_abs(p.p.here) * max_abs(p.p.here));
    CHECK(testing::rel_err(p.p.here * h, h) <= 1e-15);
    CHECK(p.den.here == p.den.mirror);
}

TEST_CASE("ddtchain: collapsed denominator names the level")
{
    const CVec d = testing::vec({1.0, kI});
    try {
        projector({d, d}, 3);
        FAIL("expected SingularPoint");
    } catch (const SingularPoint& e) {
        CHECK(e.level() == 3);
    }
    CHECK_THROWS_AS(update_potential({CVec(1), CVec(1)}, {d, d}, SpectralSetup(1.0, 2)), SingularPoint);
}

TEST_CASE("ddtchain: chain invariants and lower orders")
{
    DressOptions opt;
    opt.track_lower_orders = true;
    for (const char* name : {"fig3", "fig4", "fig6", "fig7"}) {
        const Preset p = preset(name);
        const ResolvedWave w = resolve(p.spec);
        for (const Point& pt : halton_points(30, {-8.0, 8.0, -8.0, 8.0})) {
            const ChainResult r = dress(w, pt.x, pt.t, opt);
            if (r.pole) {
                continue;
            }
            REQUIRE(static_cast<int>(r.projectors.size()) == w.order);
            for (std::size_t m = 0; m < r.projectors.size(); ++m) {
                CHECK(std::abs(trace(r.projectors[m].here) - 1.0) <= 1e-10);
                CHECK(r.kernel_residuals[m] <= 1e-9);
            }
            for (double v : r.lower_order_residuals) {
                CHECK(v <= 1e-9);
            }
        }
    }
}

TEST_CASE("ddtchain: update formula equals the commutator update")
{
    for (const char* name : {"fig1", "fig2", "fig3", "fig5", "fig6"}) {
        const ResolvedWave w = resolve(preset(name).spec);
        for (const Point& pt : halton_points(20, {-5.0, 5.0, -5.0, 5.0})) {
            const ChainResult r = dress(w, pt.x, pt.t);
            if (r.pole) {
                continue;
            }
            for (std::size_t m = 0; m < r.projectors.size(); ++m) {
                const Paired<CVec> c = q_commutator_update(r.solutions[m], r.projectors[m], w.setup);
                CHECK(testing::rel_err(r.solutions[m + 1].here, c.here) <= 1e-9);
                CHECK(testing::rel_err(r.solutions[m + 1].mirror, c.mirror) <= 1e-9);
            }
        }
    }
}

TEST_CASE("ddtchain: power-of-two scaling leaves the chain unchanged")
{
    const ResolvedWave w = resolve(preset("fig3").spec);
    Paired<std::vector<CVec>> psi{psi_expansion(w, 0.7, 0.3), psi_expansion(w, 0.7, -0.3)};
    Paired<std::vector<CVec>> scaled = psi;
    for (CVec& v : scaled.here) {
        v = std::ldexp(1.0, 40) * v;
    }
    for (CVec& v : scaled.mirror) {
        v = std::ldexp(1.0, -30) * v;
    }
    const ChainResult a = chain(psi, w.setup);
    const ChainResult b = chain(scaled, w.setup);
    for (std::size_t m = 0; m < a.projectors.size(); ++m) {
        CHECK(max_abs(a.projectors[m].here - b.projectors[m].here) <= 1e-14 * max_abs(a.projectors[m].here));
    }
}

TEST_CASE("ddtchain: dressing agrees with finite-e dressing of the closed form")
{
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}) {
        const ResolvedWave w = resolve(preset(name).spec);
        for (const Point& pt : halton_points(4, {-4.0, 4.0, -4.0, 4.0}, 7)) {
            const ChainResult r = dress(w, pt.x, pt.t);
            REQUIRE_FALSE(r.pole);
            const Paired<CVec> q = testing::contour_dressing(w, pt.x, pt.t, kUpdateSign);
            INFO(name << " x=" << pt.x << " t=" << pt.t);
            CHECK(testing::rel_err(r.solutions.back().here, q.here) <= 1e-8);
            CHECK(testing::rel_err(r.solutions.back().mirror, q.mirror) <= 1e-8);
        }
    }
}

TEST_CASE("ddtchain: reference values")
{
    const ResolvedWave fig3 = resolve(preset("fig3").spec);
    CHECK(close(rogue_point(fig3, 0.3, 0.4).psi.back()[0], cplx(-1.18000207409216, 1.25434291802519), 1e-12));
    CHECK(close(rogue_point(fig3, 1.7, 0.4).psi.back()[0], cplx(-0.892505743035868, 0.0652107968957156), 1e-12));

    // Second-order peak of height 5 rho at the origin.
    const RoguePoint p6 = rogue_point(resolve(preset("fig6").spec), 0.0, 0.0);
    CHECK(std::abs(p6.psi.back()[0]) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(std::abs(p6.psi.back()[1]) <= 1e-6);
}

TEST_CASE("ddtchain: pole flags and infinite values")
{
    const ResolvedWave w = pole_at_origin();
    const RoguePoint p = rogue_point(w, 0.0, 0.0);
    REQUIRE(p.pole);
    CHECK(*p.pole == 1);
    CHECK(std::isinf(p.psi[1][0].real()));
    CHECK(p.relative_denominators[0] == 0.0);
    CHECK_FALSE(rogue_point(w, 0.5, 0.2).pole);
}

TEST_CASE("ddtchain: the two update signs differ")
{
    const ResolvedWave w = resolve(preset("fig1").spec);
    DressOptions plus;
    plus.sign = 1;
    DressOptions minus;
    minus.sign = -1;
    const CVec a = rogue_point(w, 0.4, 0.9, plus).psi.back();
    const CVec b = rogue_point(w, 0.4, 0.9, minus).psi.back();
    CHECK(norm2(a - b) > 1e-3);
}
