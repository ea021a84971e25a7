#pragma once

// Verification suites run by `rogue verify` and the acceptance binary.

#include <string>
#include <vector>

#include <json.hpp>

#include "rogue/ddtchain.hpp"

namespace rogue {

struct CaseResult {
    std::string name;
    bool passed = false;
    nlohmann::json numbers = nlohmann::json::object();
    std::string note;
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;
    double seconds = 0.0;

    bool passed() const;
    const CaseResult* find(const std::string& name) const;
};

struct SuiteOptions {
    int sign = kUpdateSign; // update sign used for every constructed solution
    int threads = 0;
};

/// oracle, lax, projector, residual, sign, census, background.
const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite and NumericFailure when a quantity
/// that must be finite is not.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

/// "all" or a comma-separated subset; throws UsageError on unknown names.
std::vector<std::string> parse_suite_list(const std::string& text);

nlohmann::json report_json(const std::vector<SuiteResult>& results, const SuiteOptions& options);

} // namespace rogue
