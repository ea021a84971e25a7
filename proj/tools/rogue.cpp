// rogue: field exports, verification suites, coefficient tables and the
// singular-peak census for the reverse-time nonlocal NLS rogue waves.
//
// Exit codes: 0 ok, 1 verification or census failure, 2 usage or config
// error, 3 numeric failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rogue/config.hpp"
#include "rogue/errors.hpp"
#include "rogue/expansion.hpp"
#include "rogue/field.hpp"
#include "rogue/io.hpp"
#include "rogue/kernel.hpp"
#include "rogue/presets.hpp"
#include "rogue/suites.hpp"
#include "rogue/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace rogue;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct SpecFlags {
    std::optional<std::string> kind;
    std::optional<double> rho;
    std::optional<int> order;
    std::optional<std::string> omega;
    std::optional<std::string> gen_l;
    std::optional<std::string> gen_r;
    std::optional<std::string> gen_s;
};

struct RunFlags {
    std::optional<std::string> preset;
    std::optional<std::string> config;
    SpecFlags spec;
    std::optional<std::string> grid;
    std::optional<std::string> csv, json_meta, ppm;
    std::optional<int> threads;
    std::optional<double> pole_tol;
    std::optional<double> census_threshold;
};

struct EngineFlags {
    std::string isa = "auto";
    std::string engine = "kernel";
    int update_sign = kUpdateSign;
};

json vec_json(const std::vector<cplx>& v)
{
    json out = json::array();
    for (const cplx& c : v) {
        out.push_back(complex_json(c));
    }
    return out;
}

// Flags override the config file and the preset.
RunConfig resolve_config(const RunFlags& f)
{
    json doc = json::object();
    if (f.config) {
        std::ifstream in(*f.config, std::ios::binary);
        if (!in) {
            throw UsageError("cannot read config file '" + *f.config + "'");
        }
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("(root)", std::string("malformed JSON: ") + e.what());
        }
        if (!doc.is_object()) {
            throw ConfigError("(root)", "expected an object");
        }
    }
    if (f.preset) {
        doc["preset"] = *f.preset;
    }
    const SpecFlags& s = f.spec;
    if (s.kind || s.rho || s.order || s.omega || s.gen_l || s.gen_r || s.gen_s) {
        json& spec = doc["spec"];
        if (!spec.is_object()) {
            spec = json::object();
        }
        if (s.kind) {
            spec["kind"] = *s.kind;
        }
        if (s.rho) {
            spec["rho"] = *s.rho;
        }
        if (s.order) {
            spec["order"] = *s.order;
        }
        if (s.omega) {
            json om = json::array();
            for (const CVec& w : parse_omega(*s.omega)) {
                om.push_back(vec_json(std::vector<cplx>(w.begin(), w.end())));
            }
            spec["omega"] = om;
            spec.erase("generating");
        }
        if (s.gen_l || s.gen_r || s.gen_s) {
            json& g = spec["generating"];
            if (!g.is_object()) {
                g = json::object();
            }
            if (s.gen_l) {
                g["l"] = vec_json(parse_complex_list(*s.gen_l));
            }
            if (s.gen_r) {
                g["r"] = vec_json(parse_complex_list(*s.gen_r));
            }
            if (s.gen_s) {
                g["s"] = vec_json(parse_complex_list(*s.gen_s));
            }
            spec.erase("omega");
        }
    }
    if (f.grid) {
        doc["grid"] = grid_json(parse_grid(*f.grid));
    }
    for (const auto& [key, value] : {std::pair{"csv", &f.csv}, std::pair{"json", &f.json_meta},
                                     std::pair{"ppm", &f.ppm}}) {
        if (*value) {
            doc["outputs"][key] = **value;
        }
    }
    if (f.threads) {
        doc["threads"] = *f.threads;
    }
    if (f.pole_tol) {
        doc["thresholds"]["pole"] = *f.pole_tol;
    }
    if (f.census_threshold) {
        doc["thresholds"]["census"] = *f.census_threshold;
    }
    return parse_config(doc);
}

FieldOptions field_options(const RunConfig& c, const EngineFlags& e)
{
    FieldOptions o;
    o.threads = c.threads;
    o.pole_tolerance = c.thresholds.pole;
    o.sign = e.update_sign;
    if (e.isa == "scalar") {
        o.isa = KernelIsa::Scalar;
    } else if (e.isa == "avx2") {
        if (!isa_available(KernelIsa::Avx2)) {
            throw UsageError("AVX2 kernel not available on this machine or build");
        }
        o.isa = KernelIsa::Avx2;
    } else if (e.isa != "auto") {
        throw UsageError("--isa must be auto, scalar or avx2");
    }
    if (e.engine == "reference") {
        o.engine = FieldEngine::Reference;
    } else if (e.engine != "kernel") {
        throw UsageError("--engine must be kernel or reference");
    }
    return o;
}

void check_sign(int sign)
{
    if (sign != 1 && sign != -1) {
        throw UsageError("--update-sign must be +1 or -1");
    }
}

void write_outputs(const RunConfig& c, const Field& field)
{
    if (c.outputs.csv) {
        write_file(*c.outputs.csv, csv_string(field));
    }
    if (c.outputs.json) {
        write_file(*c.outputs.json, field_metadata(c, field).dump(2) + "\n");
    }
    if (c.outputs.ppm) {
        std::ostringstream ss;
        write_ppm(ss, field, c.thresholds.census);
        write_file(*c.outputs.ppm, ss.str());
    }
}

int run_field(const RunFlags& flags, const EngineFlags& engine)
{
    const RunConfig c = resolve_config(flags);
    check_sign(engine.update_sign);
    const ResolvedWave wave = resolve(c.spec);
    check_field_range(wave, c.grid);
    const auto t0 = std::chrono::steady_clock::now();
    const Field field = evaluate_field(wave, c.grid, field_options(c, engine));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!c.outputs.csv && !c.outputs.json && !c.outputs.ppm) {
        write_csv(std::cout, field);
    } else {
        write_outputs(c, field);
    }
    std::size_t poles = 0;
    for (std::uint8_t p : field.pole) {
        poles += p != 0 ? 1 : 0;
    }
    std::cerr << "field " << c.grid.nx << "x" << c.grid.nt << ", " << poles << " pole nodes, " << std::fixed
              << std::setprecision(2) << secs << " s\n";
    return kExitOk;
}

int run_verify(const std::string& suites, const std::optional<std::string>& report, int threads, int sign)
{
    check_sign(sign);
    const std::vector<std::string> names = parse_suite_list(suites);
    SuiteOptions opts;
    opts.sign = sign;
    opts.threads = threads;
    std::vector<SuiteResult> results;
    bool all = true;
    for (const std::string& n : names) {
        results.push_back(run_suite(n, opts));
        const SuiteResult& r = results.back();
        for (const CaseResult& c : r.cases) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << r.suite << "/" << c.name << "  " << c.numbers.dump()
                      << "\n";
        }
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " (" << std::fixed << std::setprecision(2)
                  << r.seconds << " s)\n";
        std::cout.unsetf(std::ios::fixed);
        all = all && r.passed();
    }
    if (report) {
        write_file(*report, report_json(results, opts).dump(2) + "\n");
    }
    return all ? kExitOk : kExitFailed;
}

std::string complex_text(cplx c)
{
    std::ostringstream ss;
    ss << std::setprecision(17) << c.real();
    if (c.imag() != 0.0) {
        ss << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    }
    return ss.str();
}

int run_coeffs(int n_max, double rho, double x, double t, int dim)
{
    if (dim != 2 && dim != 3) {
        throw UsageError("--dim must be 2 or 3");
    }
    if (!(rho > 0.0)) {
        throw UsageError("--rho must be positive");
    }
    const std::vector<CoeffRow> rows = compare_coefficients(n_max, rho, x, t, dim);
    std::cout << "# rho=" << rho << " x=" << x << " t=" << t << " dim=" << dim << "\n";
    std::cout << std::left << std::setw(4) << "n" << std::setw(9) << "coeff" << std::setw(46) << "formula"
              << std::setw(46) << "oracle"
              << "rel_error\n";
    for (const CoeffRow& r : rows) {
        std::ostringstream err;
        err << std::scientific << std::setprecision(2) << r.rel_error();
        std::cout << std::left << std::setw(4) << r.n << std::setw(9) << r.name << std::setw(46)
                  << complex_text(r.formula) << std::setw(46) << complex_text(r.oracle) << err.str() << "\n";
    }
    return kExitOk;
}

int run_census(const std::string& name, const std::optional<std::string>& out, std::optional<double> threshold,
               bool refine, const EngineFlags& engine, int threads)
{
    check_sign(engine.update_sign);
    RunConfig c = config_from_preset(preset(name));
    c.threads = threads;
    if (threshold) {
        if (!(*threshold > 0.0)) {
            throw UsageError("--threshold must be positive");
        }
        c.thresholds.census = *threshold;
    }
    const ResolvedWave wave = resolve(c.spec);
    FieldGrid g = c.census_window.value_or(c.grid);
    if (refine) {
        g.nx = 2 * g.nx - 1;
        g.nt = 2 * g.nt - 1;
    }
    const PoleCensus census =
        pole_census(evaluate_field(wave, g, field_options(c, engine)), wave.setup.rho(), c.thresholds.census);
    json j = census_json(census, c.expected);
    j["preset"] = name;
    j["grid"] = grid_json(g);
    const std::string text = j.dump(2) + "\n";
    if (out) {
        write_file(*out, text);
    } else {
        std::cout << text;
    }
    return !c.expected || census_matches(census, *c.expected) ? kExitOk : kExitFailed;
}

int run_figures(const std::string& dir, int threads, const EngineFlags& engine)
{
    check_sign(engine.update_sign);
    std::filesystem::create_directories(dir);
    bool all = true;
    for (const std::string& name : preset_names()) {
        RunConfig c = config_from_preset(preset(name));
        c.threads = threads;
        const std::string base = (std::filesystem::path(dir) / name).string();
        c.outputs = {base + ".csv", base + ".json", base + ".ppm"};
        const ResolvedWave wave = resolve(c.spec);
        const FieldOptions fo = field_options(c, engine);
        const Field field = evaluate_field(wave, c.grid, fo);
        write_outputs(c, field);

        const FieldGrid& cg = c.census_window.value_or(c.grid);
        const Field census_field = cg == c.grid ? field : evaluate_field(wave, cg, fo);
        const PoleCensus census = pole_census(census_field, wave.setup.rho(), c.thresholds.census);
        json j = census_json(census, c.expected);
        j["preset"] = name;
        j["grid"] = grid_json(cg);
        write_file(base + ".census.json", j.dump(2) + "\n");
        const bool ok = !c.expected || census_matches(census, *c.expected);
        all = all && ok;
        std::cout << name << ": " << census.clusters.size() << " clusters, " << census.bounded_peaks.size()
                  << " bounded peaks, " << census.bands << " bands" << (c.expected ? (ok ? " (ok)" : " (MISMATCH)") : "")
                  << "\n";
    }
    return all ? kExitOk : kExitFailed;
}

void add_run_flags(CLI::App* cmd, RunFlags& f)
{
    cmd->add_option("--preset", f.preset, "Preset (fig1..fig7)");
    cmd->add_option("--config", f.config, "JSON configuration file");
    cmd->add_option("--kind", f.spec.kind, "scalar or vector");
    cmd->add_option("--rho", f.spec.rho, "Background amplitude");
    cmd->add_option("--order", f.spec.order, "Solution order N (1..10)");
    cmd->add_option("--omega", f.spec.omega, "Omega coefficients, e.g. \"1,0;0,1000i\"");
    cmd->add_option("--gen-l", f.spec.gen_l, "Generating vector l, e.g. \"5e7,5e7,1\"");
    cmd->add_option("--gen-r", f.spec.gen_r, "Generating x-shift coefficients r_j");
    cmd->add_option("--gen-s", f.spec.gen_s, "Generating t-shift coefficients s_j");
    cmd->add_option("--grid", f.grid, "x0,x1,nx,t0,t1,nt");
    cmd->add_option("--csv", f.csv, "CSV output path");
    cmd->add_option("--json", f.json_meta, "JSON metadata output path");
    cmd->add_option("--ppm", f.ppm, "PPM heatmap output path");
    cmd->add_option("--threads", f.threads, "Worker threads (0: ROGUE_THREADS or all cores)");
    cmd->add_option("--pole-tol", f.pole_tol, "Relative projector denominator treated as a pole");
    cmd->add_option("--census-threshold", f.census_threshold, "Heatmap clip and census magnitude");
}

void add_engine_flags(CLI::App* cmd, EngineFlags& e, bool kernel_choice)
{
    if (kernel_choice) {
        cmd->add_option("--isa", e.isa, "Kernel ISA: auto, scalar or avx2");
        cmd->add_option("--engine", e.engine, "kernel or reference");
    }
    cmd->add_option("--update-sign", e.update_sign)->group("");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rogue waves of the reverse-time nonlocal NLS equation"};
    app.require_subcommand(1);

    RunFlags field_flags;
    EngineFlags field_engine;
    CLI::App* field = app.add_subcommand("field", "Evaluate psi on a grid and export CSV/JSON/PPM");
    add_run_flags(field, field_flags);
    add_engine_flags(field, field_engine, true);

    std::string suites = "all";
    std::optional<std::string> report;
    int verify_threads = 0;
    EngineFlags verify_engine;
    CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suites", suites, "all or a comma-separated subset of oracle,lax,projector,residual,"
                                           "sign,census,background");
    verify->add_option("--report", report, "JSON report path");
    verify->add_option("--threads", verify_threads, "Worker threads for grid evaluation");
    add_engine_flags(verify, verify_engine, false);

    int n_max = 8, dim = 2;
    double rho = 1.0, cx = 1.0, ct = 1.0;
    CLI::App* coeffs = app.add_subcommand("coeffs", "Coefficient tables beside the series oracle");
    coeffs->add_option("--n-max", n_max, "Highest coefficient index (<= 24)");
    coeffs->add_option("--rho", rho, "Background amplitude");
    coeffs->add_option("--x", cx, "x");
    coeffs->add_option("--t", ct, "t");
    coeffs->add_option("--dim", dim, "2 (scalar) or 3 (vector)");

    std::string census_preset;
    std::optional<std::string> census_out;
    std::optional<double> census_threshold;
    bool census_refine = false;
    int census_threads = 0;
    EngineFlags census_engine;
    CLI::App* census = app.add_subcommand("census", "Singular-peak census of a preset");
    census->add_option("--preset", census_preset, "Preset (fig1..fig7)")->required();
    census->add_option("--json", census_out, "Write the census here instead of standard output");
    census->add_option("--threshold", census_threshold, "Blow-up magnitude");
    census->add_flag("--refine", census_refine, "Use the 2x refined census grid");
    census->add_option("--threads", census_threads, "Worker threads");
    add_engine_flags(census, census_engine, true);

    std::string out_dir;
    int figures_threads = 0;
    EngineFlags figures_engine;
    CLI::App* figures = app.add_subcommand("figures", "Field exports and census for every preset");
    figures->add_option("--out", out_dir, "Output directory")->required();
    figures->add_option("--threads", figures_threads, "Worker threads");
    add_engine_flags(figures, figures_engine, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*field) {
            return run_field(field_flags, field_engine);
        }
        if (*verify) {
            return run_verify(suites, report, verify_threads, verify_engine.update_sign);
        }
        if (*coeffs) {
            return run_coeffs(n_max, rho, cx, ct, dim);
        }
        if (*census) {
            return run_census(census_preset, census_out, census_threshold, census_refine, census_engine,
                              census_threads);
        }
        if (*figures) {
            return run_figures(out_dir, figures_threads, figures_engine);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericOverflow& e) {
        std::cerr << "numeric overflow: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
