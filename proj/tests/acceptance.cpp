// Acceptance criteria, one PASS/FAIL line each. Exit 0 when all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rogue/errors.hpp"
#include "rogue/io.hpp"
#include "rogue/suites.hpp"

using namespace rogue;

namespace {

struct Selection {
    std::string suite;
    std::vector<std::string> cases; // empty: every case of the suite
};

std::map<std::string, SuiteResult> g_runs;

const SuiteResult& suite(const std::string& name)
{
    auto it = g_runs.find(name);
    if (it == g_runs.end()) {
        it = g_runs.emplace(name, run_suite(name)).first;
    }
    return it->second;
}

bool evaluate(const std::vector<Selection>& picks, std::string& detail)
{
    bool ok = true;
    for (const Selection& s : picks) {
        const SuiteResult& r = suite(s.suite);
        std::vector<const CaseResult*> chosen;
        if (s.cases.empty()) {
            for (const CaseResult& c : r.cases) {
                chosen.push_back(&c);
            }
        } else {
            for (const std::string& n : s.cases) {
                const CaseResult* c = r.find(n);
                if (c == nullptr) {
                    detail += " missing:" + s.suite + "/" + n;
                    ok = false;
                    continue;
                }
                chosen.push_back(c);
            }
        }
        for (const CaseResult* c : chosen) {
            if (!c->passed) {
                detail += " failed:" + s.suite + "/" + c->name + " " + c->numbers.dump();
                ok = false;
            }
        }
        if (chosen.empty()) {
            ok = false;
        }
    }
    return ok;
}

bool determinism(std::string& detail)
{
    const Preset p = preset("fig3");
    const ResolvedWave w = resolve(p.spec);
    const FieldGrid g{-20.0, 20.0, 400, -20.0, 20.0, 400};
    std::string reference;
    bool same = true;
    double worst = 0.0;
    for (int threads : {1, 4, 8}) {
        FieldOptions o;
        o.threads = threads;
        const auto t0 = std::chrono::steady_clock::now();
        const std::string csv = csv_string(evaluate_field(w, g, o));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        worst = std::max(worst, secs);
        if (reference.empty()) {
            reference = csv;
        } else {
            same = same && csv == reference;
        }
    }
    detail = " identical=" + std::string(same ? "yes" : "no") + " max_seconds=" + format_double(worst) +
             " budget_seconds=10";
    return same && worst <= 10.0;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string title;
        std::function<bool(std::string&)> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "coefficient formulas agree with the jet oracle (rel 1e-9, abs 1e-12, <= 1 s)",
         [](std::string& d) { return evaluate({{"oracle", {"coefficient_equivalence"}}}, d); }},
        {2, "closed-form eigenfunctions satisfy the Lax pair (<= 1e-6 at h = 1e-3, order >= 3.5)",
         [](std::string& d) { return evaluate({{"lax", {}}}, d); }},
        {3, "update sign is decisive and consistent (ratio >= 1e3, paths agree to 1e-9)", [](std::string& d) { return evaluate({{"sign", {}}}, d); }},
        {4, "constructed solutions solve the nonlocal equation (<= 1e-4 at h = 1e-3, >= 50 points, <= 60 s)",
         [](std::string& d) {
             return evaluate({{"residual", {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "budget"}}}, d);
         }},
        {5, "chain invariants hold (trace 1e-10, idempotence 1e-9, kernel 1e-9, mirror 1e-12)", [](std::string& d) { return evaluate({{"projector", {}}}, d); }},
        {6, "figure phenomenology (fig2 6, fig3 10 + 1, fig4 12 in 2 bands, fig5 lines, fig6 ridges, 2x refinement)",
         [](std::string& d) {
             return evaluate({{"census",
                               {"fig2", "fig3", "fig4", "fig5_dark_bright_lines", "fig6_ridges_and_central_peak"}}},
                             d);
         }},
        {7, "background limit and nonlocality witness (1e-2 at x = +-50; local >= 0.1, nonlocal <= 1e-5)",
         [](std::string& d) {
             return evaluate({{"background", {"fig1_far_field"}}, {"residual", {"nonlocality_witness"}}}, d);
         }},
        {8, "deterministic 400x400 order-3 field within budget", determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail += std::string(" error: ") + e.what();
        }
        failures += ok ? 0 : 1;
        std::printf("criterion %d: %s %s%s\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
