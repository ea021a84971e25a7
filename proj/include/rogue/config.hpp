#pragma once

// Run configuration: JSON schema, flag syntax and preset serialization.
//
// {
//   "preset": "fig2",                     optional base, other keys override it
//   "spec": {"kind": "scalar" | "vector", "rho": 1, "order": 2,
//            "omega": [[[1, 0], [0, 0]], [[0, 0], [0, 1000]]]
//          | "generating": {"l": [[5e7, 0], ...], "r": [...], "s": [...]}},
//   "grid": {"x0": -20, "x1": 20, "nx": 201, "t0": -20, "t1": 20, "nt": 201},
//   "census_window": {...grid...},
//   "expected": {"clusters": 6, "bounded_peaks": 1, "bands": 2},
//   "outputs": {"csv": "f.csv", "json": "f.json", "ppm": "f.ppm"},
//   "thresholds": {"pole": 1e-10, "census": 20},
//   "threads": 0
// }
//
// Complex numbers are [re, im] pairs. Violations raise ConfigError naming the
// offending field path.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rogue/errors.hpp"
#include "rogue/expansion.hpp"
#include "rogue/field.hpp"
#include "rogue/presets.hpp"

namespace rogue {

inline constexpr std::string_view kArtifactName = "rogue";
inline constexpr std::string_view kArtifactVersion = "1.0.0";

class ConfigError : public UsageError {
public:
    ConfigError(const std::string& path, const std::string& what)
        : UsageError(path + ": " + what), path_(path)
    {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct Outputs {
    std::optional<std::string> csv;
    std::optional<std::string> json;
    std::optional<std::string> ppm;
    friend bool operator==(const Outputs&, const Outputs&) = default;
};

struct Thresholds {
    double pole = kDefaultPoleTolerance;
    double census = 20.0;
    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct RunConfig {
    std::string preset; // empty unless built from a preset
    WaveSpec spec{SpectralSetup(1.0, 2), 1, OmegaSeries{}};
    FieldGrid grid;
    std::optional<FieldGrid> census_window;
    std::optional<CensusExpectation> expected;
    Outputs outputs;
    Thresholds thresholds;
    int threads = 0;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig config_from_preset(const Preset& p);
Preset to_preset(const RunConfig& c);

nlohmann::json to_json(const RunConfig& c);
std::string serialize(const RunConfig& c);
std::string serialize(const Preset& p);

/// Validates the document against the schema and the resulting spec and grid.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config(std::string_view text);
inline RunConfig parse_config(const std::string& text) { return parse_config(std::string_view(text)); }
inline RunConfig parse_config(const char* text) { return parse_config(std::string_view(text)); }
RunConfig load_config(const std::string& path);

nlohmann::json complex_json(cplx c);
nlohmann::json spec_json(const WaveSpec& spec);
nlohmann::json grid_json(const FieldGrid& grid);

/// "1", "-2.5", "1000i", "-i", "1+2i", "2.5e3-1e-2i".
cplx parse_complex(std::string_view text);
/// Comma-separated complex numbers; empty text gives an empty list.
std::vector<cplx> parse_complex_list(std::string_view text);
/// Semicolon-separated vectors: "1,0;0,1000i" is omega_0 = (1, 0), omega_1 = (0, 1000i).
std::vector<CVec> parse_omega(std::string_view text);
/// "x0,x1,nx,t0,t1,nt".
FieldGrid parse_grid(std::string_view text);

} // namespace rogue
