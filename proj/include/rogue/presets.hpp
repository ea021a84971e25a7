#pragma once

// Named presets fig1..fig7: wave parameters, calibrated evaluation windows
// and expected census counts.

#include <optional>
#include <string>
#include <vector>

#include "rogue/expansion.hpp"
#include "rogue/field.hpp"

namespace rogue {

struct CensusExpectation {
    int clusters = 0;
    std::optional<int> bounded_peaks;
    std::optional<int> bands;
    friend bool operator==(const CensusExpectation&, const CensusExpectation&) = default;
};

struct Preset {
    std::string name;
    WaveSpec spec;
    FieldGrid window;
    double census_threshold = 20.0;
    std::optional<CensusExpectation> expected;
    std::optional<FieldGrid> census_window; // defaults to window

    const FieldGrid& census_grid() const { return census_window ? *census_window : window; }
    friend bool operator==(const Preset&, const Preset&) = default;
};

const std::vector<std::string>& preset_names();

/// Throws UsageError for an unknown name.
Preset preset(const std::string& name);

} // namespace rogue
