#include <doctest.h>

#include <charconv>
#include <sstream>

#include "helpers.hpp"
#include "rogue/io.hpp"

using namespace rogue;

namespace {

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("io: shortest doubles round-trip")
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 5e-324}) {
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("io: fig1 CSV on a 200 x 200 grid")
{
    const Preset p = preset("fig1");
    const Field f = evaluate_field(resolve(p.spec), {-10.0, 10.0, 200, -10.0, 10.0, 200});
    const std::string csv = csv_string(f);
    CHECK(count_lines(csv) == 40001);
    CHECK(csv.rfind("x,t,re1,im1,abs1\n", 0) == 0);
    CHECK(csv.find("inf") == std::string::npos);
}

TEST_CASE("io: small grid is deterministic")
{
    const ResolvedWave w = resolve(preset("fig5").spec);
    const FieldGrid g{-1.0, 1.0, 2, -1.0, 1.0, 2};
    const std::string a = csv_string(evaluate_field(w, g));
    CHECK(count_lines(a) == 5);
    CHECK(a.rfind("x,t,re1,im1,abs1,re2,im2,abs2\n-1,-1,", 0) == 0);
    CHECK(a == csv_string(evaluate_field(w, g)));
}

TEST_CASE("io: poles print as inf")
{
    const ResolvedWave w =
        resolve(WaveSpec{SpectralSetup(1.0, 2), 1, OmegaSeries{{testing::vec({1.0, testing::kI})}}});
    const std::string csv = csv_string(evaluate_field(w, {-1.0, 1.0, 3, -1.0, 1.0, 3}));
    CHECK(csv.find("\n0,0,inf,inf,inf\n") != std::string::npos);
}

TEST_CASE("io: fig2 census")
{
    const Preset p = preset("fig2");
    const Field f = evaluate_field(resolve(p.spec), p.census_grid());
    const PoleCensus c = pole_census(f, p.spec.setup.rho(), p.census_threshold);
    CHECK(c.clusters.size() == 6);
    const auto j = census_json(c, p.expected);
    CHECK(j["counts"]["clusters"] == 6);
    CHECK(j["matches"] == true);
}

TEST_CASE("io: PPM layout")
{
    const ResolvedWave w =
        resolve(WaveSpec{SpectralSetup(1.0, 2), 1, OmegaSeries{{testing::vec({1.0, testing::kI})}}});
    const Field f = evaluate_field(w, {-1.0, 1.0, 3, -1.0, 1.0, 3});
    std::ostringstream out;
    write_ppm(out, f, 20.0);
    const std::string s = out.str();
    const std::string header = "P6\n3 3\n255\n";
    REQUIRE(s.size() == header.size() + 27);
    CHECK(s.rfind(header, 0) == 0);
    const std::size_t centre = header.size() + 3 * 4;
    CHECK(static_cast<unsigned char>(s[centre]) == kPoleColour.r);
    CHECK(static_cast<unsigned char>(s[centre + 1]) == kPoleColour.g);
    CHECK(static_cast<unsigned char>(s[centre + 2]) == kPoleColour.b);
}

TEST_CASE("io: metadata")
{
    const RunConfig c = config_from_preset(preset("fig1"));
    const Field f = evaluate_field(resolve(c.spec), {-1.0, 1.0, 3, -1.0, 1.0, 3});
    const auto j = field_metadata(c, f);
    for (const char* key : {"artifact", "version", "preset", "spec", "grid", "components", "update_sign",
                            "pole_tolerance", "census_threshold", "poles"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["update_sign"] == -1);
    CHECK(j["poles"] == 0);
}
