#include <doctest.h>

#include "helpers.hpp"
#include "rogue/config.hpp"

using namespace rogue;
using testing::kI;

namespace {

std::string error_path(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<accepted>";
}

} // namespace

TEST_CASE("config: complex number syntax")
{
    CHECK(parse_complex("1") == cplx(1.0));
    CHECK(parse_complex("-2.5") == cplx(-2.5));
    CHECK(parse_complex("1000i") == cplx(0.0, 1000.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("1+2i") == cplx(1.0, 2.0));
    CHECK(parse_complex("2.5e3-1e-2i") == cplx(2500.0, -0.01));
    CHECK_THROWS_AS(parse_complex("1+"), UsageError);
    CHECK_THROWS_AS(parse_complex("abc"), UsageError);
    CHECK(parse_complex_list("").empty());
    CHECK(parse_complex_list("1,2i").size() == 2);
}

TEST_CASE("config: omega flag")
{
    const auto o = parse_omega("1,0;0,1000i");
    REQUIRE(o.size() == 2);
    CHECK(o[0] == testing::vec({1.0, 0.0}));
    CHECK(o[1] == testing::vec({0.0, 1000.0 * kI}));
    const FieldGrid g = parse_grid("-5,5,11,-2,2,5");
    CHECK(g == FieldGrid{-5.0, 5.0, 11, -2.0, 2.0, 5});
    CHECK_THROWS_AS(parse_grid("1,2,3"), UsageError);
}

TEST_CASE("config: explicit omega matches the preset")
{
    const RunConfig c = parse_config(R"({"spec": {"kind": "scalar", "rho": 1, "order": 2,
        "omega": [[[1, 0], [0, 0]], [[0, 0], [0, 1000]]]},
        "grid": {"x0": -1, "x1": 1, "nx": 3, "t0": -1, "t1": 1, "nt": 3}})");
    CHECK(c.spec == preset("fig2").spec);
}

TEST_CASE("config: generating form matches fig7")
{
    const RunConfig c = parse_config(R"({"spec": {"kind": "vector", "rho": 1, "order": 2,
        "generating": {"l": [[5e7, 0], [5e7, 0], [1, 0]], "s": [[0, 0], [400, 0], [300, 0]]}},
        "grid": {"x0": -1, "x1": 1, "nx": 3, "t0": -1, "t1": 1, "nt": 3}})");
    CHECK(c.spec == preset("fig7").spec);
}

TEST_CASE("config: every preset round-trips")
{
    for (const std::string& name : preset_names()) {
        const Preset p = preset(name);
        INFO(name);
        CHECK(to_preset(parse_config(serialize(p))) == p);
        const RunConfig c = config_from_preset(p);
        CHECK(parse_config(serialize(c)) == c);
    }
}

TEST_CASE("config: preset base with overrides")
{
    const RunConfig c = parse_config(R"({"preset": "fig3", "grid": {"x0": -1, "x1": 1, "nx": 3,
        "t0": -1, "t1": 1, "nt": 3}, "expected": null, "threads": 2})");
    CHECK(c.spec == preset("fig3").spec);
    CHECK(c.grid.nx == 3);
    CHECK_FALSE(c.expected);
    CHECK(c.threads == 2);
}

TEST_CASE("config: errors name the offending field")
{
    CHECK(error_path(R"({"spec": {"kind": "scalar", "rho": 1, "order": 11,
        "omega": [[[1, 0], [0, 0]]]}})") == "spec.order");
    CHECK(error_path(R"({"spec": {"kind": "scalar", "rho": 1, "order": 1,
        "omega": [[[1, 0], [0]]]}})") == "spec.omega[0][1]");
    CHECK(error_path(R"({"preset": "fig1", "colour": 1})") == "colour");
    CHECK(error_path(R"({"preset": "fig1", "grid": {"nx": 1}})").rfind("grid", 0) == 0);
    CHECK(error_path(R"({"preset": "fig9"})") == "preset");
    CHECK(error_path(R"({"spec": {"kind": "tensor"}})") == "spec.kind");
    CHECK(error_path(R"({"preset": "fig1", "thresholds": {"pole": -1}})") == "thresholds.pole");
    CHECK_THROWS_AS(parse_config("{not json"), UsageError);
}

TEST_CASE("config: order 11 message")
{
    try {
        parse_config(R"({"spec": {"kind": "scalar", "rho": 1, "order": 11, "omega": [[[1, 0], [0, 0]]]}})");
        FAIL("accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("[1, 10]") != std::string::npos);
    }
}
