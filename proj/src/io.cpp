#include "rogue/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rogue/ddtchain.hpp"

namespace rogue {
namespace {

using json = nlohmann::json;

void append(std::string& out, double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

json number_or_text(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return format_double(v);
}

json window_json(const Window& w)
{
    return {{"x0", w.x0}, {"x1", w.x1}, {"t0", w.t0}, {"t1", w.t1}};
}

} // namespace

std::string format_double(double v)
{
    std::string s;
    append(s, v);
    return s;
}

void write_csv(std::ostream& out, const Field& field)
{
    out << csv_string(field);
}

std::string csv_string(const Field& field)
{
    const FieldGrid& g = field.grid;
    const std::size_t n = g.size();
    std::string out;
    out.reserve((n + 1) * static_cast<std::size_t>(24 + 72 * field.components));
    out += "x,t";
    for (int c = 1; c <= field.components; ++c) {
        const std::string k = std::to_string(c);
        out += ",re" + k + ",im" + k + ",abs" + k;
    }
    out += '\n';
    for (int j = 0; j < g.nt; ++j) {
        const double t = g.t_at(j);
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) +
                                  static_cast<std::size_t>(i);
            append(out, g.x_at(i));
            out += ',';
            append(out, t);
            for (int c = 0; c < field.components; ++c) {
                if (field.pole[k] != 0) {
                    out += ",inf,inf,inf";
                    continue;
                }
                const cplx v = field.at(c, k);
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                    throw NumericFailure("non-finite field value at x = " + format_double(g.x_at(i)) +
                                         ", t = " + format_double(t));
                }
                out += ',';
                append(out, v.real());
                out += ',';
                append(out, v.imag());
                out += ',';
                append(out, std::abs(v));
            }
            out += '\n';
        }
    }
    return out;
}

json field_metadata(const RunConfig& config, const Field& field)
{
    std::size_t poles = 0;
    for (std::uint8_t p : field.pole) {
        poles += p != 0 ? 1 : 0;
    }
    json j;
    j["artifact"] = kArtifactName;
    j["version"] = kArtifactVersion;
    if (!config.preset.empty()) {
        j["preset"] = config.preset;
    }
    j["spec"] = spec_json(config.spec);
    j["grid"] = grid_json(field.grid);
    j["components"] = field.components;
    j["update_sign"] = kUpdateSign;
    j["pole_tolerance"] = config.thresholds.pole;
    j["census_threshold"] = config.thresholds.census;
    j["poles"] = poles;
    j["csv_columns"] = "x,t then re,im,abs per component; t-major rows";
    return j;
}

Rgb heat_colour(double unit)
{
    struct Stop {
        double at;
        double r, g, b;
    };
    static constexpr Stop kStops[] = {
        {0.00, 8, 8, 48}, {0.25, 24, 80, 160}, {0.50, 32, 168, 152}, {0.75, 236, 200, 40}, {1.00, 255, 255, 224},
    };
    const double u = std::clamp(unit, 0.0, 1.0);
    std::size_t s = 1;
    while (s + 1 < std::size(kStops) && u > kStops[s].at) {
        ++s;
    }
    const Stop& a = kStops[s - 1];
    const Stop& b = kStops[s];
    const double w = (u - a.at) / (b.at - a.at);
    auto mix = [w](double x, double y) { return static_cast<unsigned char>(std::lround(x + (y - x) * w)); };
    return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

void write_ppm(std::ostream& out, const Field& field, double threshold)
{
    const FieldGrid& g = field.grid;
    const double hi = std::log10(threshold);
    const double lo = hi - 3.0;
    out << "P6\n" << g.nx << ' ' << g.nt << "\n255\n";
    std::string row(static_cast<std::size_t>(g.nx) * 3, '\0');
    for (int j = g.nt - 1; j >= 0; --j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) +
                                  static_cast<std::size_t>(i);
            Rgb c = kPoleColour;
            if (field.pole[k] == 0) {
                const double m = field.magnitude(k);
                c = heat_colour(m > 0.0 ? (std::log10(m) - lo) / (hi - lo) : 0.0);
            }
            row[3 * static_cast<std::size_t>(i)] = static_cast<char>(c.r);
            row[3 * static_cast<std::size_t>(i) + 1] = static_cast<char>(c.g);
            row[3 * static_cast<std::size_t>(i) + 2] = static_cast<char>(c.b);
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

bool census_matches(const PoleCensus& census, const CensusExpectation& expected)
{
    if (static_cast<int>(census.clusters.size()) != expected.clusters) {
        return false;
    }
    if (expected.bounded_peaks && static_cast<int>(census.bounded_peaks.size()) != *expected.bounded_peaks) {
        return false;
    }
    return !expected.bands || census.bands == *expected.bands;
}

json census_json(const PoleCensus& census, const std::optional<CensusExpectation>& expected)
{
    json clusters = json::array();
    for (const Cluster& c : census.clusters) {
        clusters.push_back({{"x", c.centroid.x},
                            {"t", c.centroid.t},
                            {"cells", c.cell_count},
                            {"peak", number_or_text(c.peak_magnitude)},
                            {"radius", c.radius}});
    }
    json peaks = json::array();
    for (const BoundedPeak& p : census.bounded_peaks) {
        peaks.push_back({{"x", p.centroid.x}, {"t", p.centroid.t}, {"height", p.height}});
    }
    json j;
    j["window"] = window_json(census.window);
    j["threshold"] = census.threshold;
    j["counts"] = {{"clusters", census.clusters.size()},
                   {"bounded_peaks", census.bounded_peaks.size()},
                   {"bands", census.bands}};
    j["clusters"] = clusters;
    j["bounded_peaks"] = peaks;
    if (expected) {
        j["expected"] = {{"clusters", expected->clusters},
                         {"bounded_peaks", expected->bounded_peaks ? json(*expected->bounded_peaks) : json(nullptr)},
                         {"bands", expected->bands ? json(*expected->bands) : json(nullptr)}};
        j["matches"] = census_matches(census, *expected);
    } else {
        j["expected"] = nullptr;
        j["matches"] = nullptr;
    }
    return j;
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

} // namespace rogue
