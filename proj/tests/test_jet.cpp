#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "rogue/expansion.hpp"
#include "rogue/jet.hpp"

using namespace rogue;
using testing::close;
using testing::kI;

TEST_CASE("jet: square of 1 + e")
{
    const Jet a(2, {1.0, 1.0});
    const Jet p = a * a;
    CHECK(p[0] == cplx(1.0));
    CHECK(p[1] == cplx(2.0));
    CHECK(p[2] == cplx(1.0));
}

TEST_CASE("jet: tau^2 at rho = 1 is -(2 e + e^2)")
{
    const Jet e = Jet::variable(2);
    const Jet tau2 = -1.0 * (e * (2.0 + e));
    CHECK(tau2[0] == cplx(0.0));
    CHECK(tau2[1] == cplx(-2.0));
    CHECK(tau2[2] == cplx(-1.0));
}

TEST_CASE("jet: additive identity")
{
    std::mt19937_64 rng(7);
    const Jet a = testing::random_jet(rng, 5, 3.0);
    const Jet b = testing::random_jet(rng, 5, 3.0);
    const Jet r = a + (b - b);
    for (int k = 0; k <= 5; ++k) {
        CHECK(r[k] == a[k]);
    }
}

TEST_CASE("jet: order mismatch and range are usage errors")
{
    CHECK_THROWS_AS(Jet(2) + Jet(3), UsageError);
    CHECK_THROWS_AS(Jet(2) * Jet(3), UsageError);
    CHECK_THROWS_AS(Jet(kMaxJetOrder + 1), UsageError);
    CHECK_THROWS_AS(Jet(-1), UsageError);
}

TEST_CASE("jet: product is commutative and associative")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Jet a = testing::random_jet(rng, 8, 2.0);
        const Jet b = testing::random_jet(rng, 8, 2.0);
        const Jet c = testing::random_jet(rng, 8, 2.0);
        const Jet ab = a * b;
        const Jet ba = b * a;
        const Jet l = (a * b) * c;
        const Jet r = a * (b * c);
        for (int k = 0; k <= 8; ++k) {
            CHECK(close(ab[k], ba[k], 1e-14, 1e-14));
            CHECK(close(l[k], r[k], 1e-13, 1e-13));
        }
    }
}

TEST_CASE("jet: exponential series of e")
{
    const Jet z(3, {0.0, 1.0, 0.0, 0.0});
    const Jet r = apply_entire(ExpSeries{}, z, 3);
    CHECK(close(r[0], 1.0, 1e-16));
    CHECK(close(r[1], 1.0, 1e-16));
    CHECK(close(r[2], 0.5, 1e-16));
    CHECK(close(r[3], 1.0 / 6.0, 1e-15));
    const Jet e = exp(z);
    for (int k = 0; k <= 3; ++k) {
        CHECK(close(e[k], r[k], 1e-15));
    }
}

TEST_CASE("jet: cos series on zero")
{
    const Jet r = apply_entire(CosSqrtSeries{}, Jet(4), 4);
    CHECK(r[0] == cplx(1.0));
    for (int k = 1; k <= 4; ++k) {
        CHECK(r[k] == cplx(0.0));
    }
}

TEST_CASE("jet: sinc series at zero is one")
{
    const Jet r = apply_entire(SincSqrtSeries{}, Jet(3), 3);
    CHECK(r[0] == cplx(1.0));
    CHECK(r[1] == cplx(0.0));
}

TEST_CASE("jet: sine series divided termwise reproduces sinc")
{
    // sin(e) / e as a sequence: coefficient k of sinc is coefficient k+1 of sin.
    const int n = 9;
    const Jet s = apply_entire(SinSeries{}, Jet::variable(n), n);
    const Jet w = Jet::variable(n) * Jet::variable(n);
    const Jet c = apply_entire(SincSqrtSeries{}, w, n);
    for (int k = 0; k < n; ++k) {
        CHECK(close(s[k + 1], c[k], 1e-15, 1e-300));
    }
}

TEST_CASE("jet: apply_entire rejects a constant term")
{
    CHECK_THROWS(apply_entire(ExpSeries{}, Jet(2, {1.0, 1.0}), 2));
}

TEST_CASE("jet: exponential identities")
{
    const Jet one = exp(Jet(3));
    CHECK(one[0] == cplx(1.0));
    CHECK(one[1] == cplx(0.0));

    const Jet m = exp(Jet(3, {kI * std::numbers::pi}));
    CHECK(std::abs(m[0] - cplx(-1.0)) <= 1e-15);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Jet a = testing::random_jet(rng, 6, 1.5);
        const Jet b = testing::random_jet(rng, 6, 1.5);
        const Jet l = exp(a + b);
        const Jet r = exp(a) * exp(b);
        for (int k = 0; k <= 6; ++k) {
            CHECK(close(l[k], r[k], 1e-12, 1e-13 * std::abs(l[0])));
        }
    }
}

TEST_CASE("jet: exponential overflow carries the exponent")
{
    try {
        exp(Jet(2, {800.0}));
        FAIL("expected NumericOverflow");
    } catch (const NumericOverflow& e) {
        CHECK(e.exponent() == doctest::Approx(800.0));
    }
}

TEST_CASE("jet: cos of (tau x)^2 gives the alpha coefficients")
{
    // At rho = 1, x = 1 the diagonal mean of R(e) is cos(sqrt(tau^2 x^2)).
    const int n = 6;
    const Jet e = Jet::variable(n);
    const Jet tau2 = -1.0 * (e * (2.0 + e));
    const Jet c = apply_entire(CosSqrtSeries{}, tau2, n);
    const CoeffTables tb = coefficient_tables(n, 1.0, 1.0, 0.0);
    for (int k = 0; k <= n; ++k) {
        CHECK(close(c[k], tb.alpha[static_cast<std::size_t>(k)], 1e-12, 1e-15));
    }
}
