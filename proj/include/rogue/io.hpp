#pragma once

// Field and census exports.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rogue/config.hpp"
#include "rogue/field.hpp"
#include "rogue/presets.hpp"
#include "rogue/verify.hpp"

namespace rogue {

/// Shortest representation that reads back to the same double; "inf" for
/// +infinity.
std::string format_double(double v);

/// Header "x,t,re1,im1,abs1[,re2,im2,abs2]", then one LF-terminated row per
/// node in t-major order. Pole nodes carry "inf" in every value column.
/// Throws NumericFailure on a NaN value away from poles.
void write_csv(std::ostream& out, const Field& field);
std::string csv_string(const Field& field);

/// Spec, grid, update sign, thresholds, artifact version and pole count.
nlohmann::json field_metadata(const RunConfig& config, const Field& field);

/// Binary PPM of log10 |psi| over [log10(threshold) - 3, log10(threshold)],
/// top row at t1. Poles use the sentinel colour.
void write_ppm(std::ostream& out, const Field& field, double threshold);

struct Rgb {
    unsigned char r, g, b;
};
inline constexpr Rgb kPoleColour{255, 0, 255};
Rgb heat_colour(double unit);

nlohmann::json census_json(const PoleCensus& census, const std::optional<CensusExpectation>& expected);

/// Whether the census meets every count in the expectation.
bool census_matches(const PoleCensus& census, const CensusExpectation& expected);

/// Writes the text to the path; throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& contents);

} // namespace rogue
