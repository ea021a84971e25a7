#include <doctest.h>

#include "helpers.hpp"
#include "rogue/expansion.hpp"
#include "rogue/presets.hpp"
#include "rogue/verify.hpp"

using namespace rogue;
using testing::close;
using testing::kI;

TEST_CASE("expansion: binomial formulas agree with the series oracle")
{
    for (int dim : {2, 3}) {
        for (const CoeffRow& r : compare_coefficients(8, 1.0, 1.0, 1.0, dim)) {
            INFO(r.name << "_" << r.n);
            CHECK(r.agrees(1e-9, 1e-12));
        }
    }
    for (double rho : {0.5, 1.7}) {
        for (const Point& p : halton_points(20, {-3.0, 3.0, -3.0, 3.0})) {
            for (const CoeffRow& r : compare_coefficients(8, rho, p.x, p.t, 3)) {
                CHECK(r.agrees(1e-9, 1e-12));
            }
        }
    }
}

TEST_CASE("expansion: zeroth coefficients")
{
    const CoeffTables tb = coefficient_tables(0, 1.0, 0.4, 0.3, 3);
    CHECK(tb.alpha[0] == 1.0);
    CHECK(tb.gamma[0] == 1.0);
    CHECK(tb.beta[0] == doctest::Approx(0.4));
    CHECK(tb.theta[0] == doctest::Approx(0.6));
    CHECK(tb.a_tilde[0] == 1.0);
    CHECK(tb.rho3[0] == cplx(1.0));
}

TEST_CASE("expansion: parity in x and t")
{
    const CoeffTables a = coefficient_tables(8, 1.3, 0.8, 0.6);
    const CoeffTables b = coefficient_tables(8, 1.3, -0.8, -0.6);
    for (std::size_t n = 0; n <= 8; ++n) {
        CHECK(close(b.alpha[n], a.alpha[n], 1e-14, 1e-300));
        CHECK(close(b.beta[n], -a.beta[n], 1e-14, 1e-300));
        CHECK(close(b.gamma[n], a.gamma[n], 1e-14, 1e-300));
        CHECK(close(b.theta[n], -a.theta[n], 1e-14, 1e-300));
    }
}

TEST_CASE("expansion: table order is capped")
{
    CHECK_THROWS_AS(coefficient_tables(25, 1.0, 0.0, 0.0), UsageError);
    CHECK_NOTHROW(coefficient_tables(24, 1.0, 0.5, 0.5));
}

TEST_CASE("expansion: Psi_n are the Taylor coefficients of the closed form")
{
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}) {
        const ResolvedWave w = resolve(preset(name).spec);
        for (const Point& p : halton_points(5, {-4.0, 4.0, -4.0, 4.0})) {
            const auto oracle = testing::contour_coefficients(testing::closed_eigenfunction(w, p.x, p.t), w.order);
            double scale = 0.0;
            for (const CVec& v : oracle) {
                scale = std::max(scale, norm2(v));
            }
            for (ExpansionPath path : {ExpansionPath::Tables, ExpansionPath::Jets}) {
                const auto psi = psi_expansion(w, p.x, p.t, path);
                for (std::size_t n = 0; n < psi.size(); ++n) {
                    INFO(name << " n=" << n << " x=" << p.x << " t=" << p.t);
                    CHECK(norm2(psi[n] - oracle[n]) <= 1e-9 * scale);
                }
            }
        }
    }
}

TEST_CASE("expansion: truncation error scales as e^(N+1)")
{
    ResolvedWave w = resolve(preset("fig3").spec);
    const double x = 0.8, t = -0.5;
    const auto psi = psi_expansion(w, x, t);
    const auto f = testing::closed_eigenfunction(w, x, t);
    auto err = [&](double e) {
        CVec sum(2);
        for (int n = 3; n >= 0; --n) {
            sum = e * sum + psi[static_cast<std::size_t>(n)];
        }
        return norm2(sum - f(e));
    };
    const double ratio = err(2e-2) / err(1e-2);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("expansion: generating form of the fig7 preset")
{
    // At s0 = 0, r = 0: omega_0 = l and omega_1 = 400 i Omega(i rho) l with
    // Omega = diag block 2 i rho Theta and third entry rho^2.
    const ResolvedWave w = resolve(preset("fig7").spec);
    CHECK(w.omega[0] == testing::vec({5e7, 5e7, 1.0}));
    const CVec expect = testing::vec({-8e10 * kI, 8e10 * kI, 400.0 * kI});
    CHECK(testing::rel_err(w.omega[1], expect) <= 1e-12);
}

TEST_CASE("expansion: spec validation")
{
    WaveSpec s{SpectralSetup(1.0, 2), 11, OmegaSeries{{testing::vec({1.0, 0.0})}}};
    CHECK_THROWS_AS(s.validate(), UsageError);
    s.order = 2;
    CHECK_NOTHROW(s.validate());
    s.source = OmegaSeries{{testing::vec({0.0, 0.0})}};
    CHECK_THROWS_AS(s.validate(), UsageError);
    s.source = OmegaSeries{{testing::vec({1.0, 0.0, 0.0})}};
    CHECK_THROWS_AS(s.validate(), UsageError);
    s.source = GeneratingForm{testing::vec({1.0, 1.0}), {}, {}};
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("expansion: overflowing generating parameters are rejected")
{
    const WaveSpec s{SpectralSetup(1.0, 3), 2, GeneratingForm{testing::vec({1e300, 1e300, 1.0}), {}, {0.0, 1e300}}};
    CHECK_THROWS_AS(resolve(s), NumericOverflow);
}
