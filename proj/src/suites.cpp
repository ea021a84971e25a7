#include "rogue/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "rogue/config.hpp"
#include "rogue/expansion.hpp"
#include "rogue/field.hpp"
#include "rogue/io.hpp"
#include "rogue/presets.hpp"
#include "rogue/verify.hpp"

namespace rogue {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr cplx kI{0.0, 1.0};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Numbers that may legitimately be undefined (an order estimate with every
// step pair on the roundoff floor) are written as null.
json maybe(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

double finite(double v, const std::string& what)
{
    if (std::isnan(v)) {
        throw NumericFailure("NaN in " + what);
    }
    return v;
}

Window window_of(const FieldGrid& g)
{
    return {g.x0, g.x1, g.t0, g.t1};
}

Equation equation_for(const ResolvedWave& w)
{
    return w.setup.dim() == 2 ? Equation::NonlocalScalar : Equation::NonlocalVector;
}

DressOptions dress_options(const SuiteOptions& o)
{
    DressOptions d;
    d.sign = o.sign;
    return d;
}

FieldOptions field_options(const SuiteOptions& o)
{
    FieldOptions f;
    f.threads = o.threads;
    f.sign = o.sign;
    return f;
}

double rel_diff(const CVec& a, const CVec& ref)
{
    const double n = norm2(ref);
    return n > 0.0 ? norm2(a - ref) / n : norm2(a - ref);
}

std::string lambda_label(int k)
{
    return k == 0 ? "generic" : "i*rho";
}

// Largest relative gap between the update formula and the commutator update
// over all levels of one dressed point.
double dual_path_error(const ChainResult& res, const SpectralSetup& setup)
{
    double worst = 0.0;
    for (std::size_t m = 0; m < res.projectors.size(); ++m) {
        const Paired<CVec> comm = q_commutator_update(res.solutions[m], res.projectors[m], setup);
        worst = std::max({worst, rel_diff(res.solutions[m + 1].here, comm.here),
                          rel_diff(res.solutions[m + 1].mirror, comm.mirror)});
    }
    return worst;
}

struct Tally {
    double worst = 0.0;
    double limit = 0.0;
    void add(double v, const std::string& what) { worst = std::max(worst, finite(v, what)); }
    bool ok() const { return worst <= limit; }
};

// ---------------------------------------------------------------- oracle

SuiteResult oracle_suite(const SuiteOptions&)
{
    SuiteResult s{"oracle", {}, 0.0};
    {
        const auto t0 = Clock::now();
        CaseResult c{"coefficient_equivalence", false, json::object(), ""};
        std::size_t rows = 0;
        double worst = 0.0;
        bool ok = true;
        for (double rho : {0.5, 1.0, 1.7}) {
            for (const Point& pt : halton_points(20, {-3.0, 3.0, -3.0, 3.0})) {
                for (int dim : {2, 3}) {
                    for (const CoeffRow& r : compare_coefficients(8, rho, pt.x, pt.t, dim)) {
                        ++rows;
                        const double frac = r.abs_error() / std::max(1e-9 * std::abs(r.oracle), 1e-12);
                        worst = std::max(worst, finite(frac, "coefficient comparison"));
                        ok = ok && r.agrees(1e-9, 1e-12);
                    }
                }
            }
        }
        const double secs = seconds_since(t0);
        c.passed = ok && secs <= 1.0;
        c.numbers = {{"rows", rows},
                     {"worst_error_over_tolerance", worst},
                     {"rel_tol", 1e-9},
                     {"abs_floor", 1e-12},
                     {"seconds", secs},
                     {"budget_seconds", 1.0}};
        s.cases.push_back(c);
    }
    {
        CaseResult c{"leading_coefficients", false, json::object(), ""};
        const double rho = 1.3, x = 0.7, t = -0.4;
        const CoeffTables tb = coefficient_tables(0, rho, x, t, 3);
        bool ok = tb.alpha[0] == 1.0 && tb.gamma[0] == 1.0 && tb.a_tilde[0] == 1.0 && tb.rho3[0] == cplx(1.0) &&
                  std::abs(tb.beta[0] - rho * x) <= 1e-15 && std::abs(tb.theta[0] - 2.0 * rho * rho * t) <= 1e-15;
        double worst = 0.0;
        for (const CoeffRow& r : compare_coefficients(0, rho, x, t, 3)) {
            worst = std::max(worst, r.abs_error());
        }
        ok = ok && worst <= 1e-13;
        c.passed = ok;
        c.numbers = {{"alpha0", tb.alpha[0]}, {"beta0", tb.beta[0]}, {"gamma0", tb.gamma[0]},
                     {"theta0", tb.theta[0]}, {"oracle_worst_abs", worst}};
        s.cases.push_back(c);
    }
    for (const std::string& name : preset_names()) {
        CaseResult c{"expansion_paths_" + name, false, json::object(), ""};
        const Preset p = preset(name);
        const ResolvedWave wave = resolve(p.spec);
        Tally t{0.0, 1e-9};
        for (const Point& pt : halton_points(20, window_of(p.census_grid()))) {
            const auto a = psi_expansion(wave, pt.x, pt.t, ExpansionPath::Tables);
            const auto b = psi_expansion(wave, pt.x, pt.t, ExpansionPath::Jets);
            double scale = 0.0;
            for (const CVec& v : b) {
                scale = std::max(scale, norm2(v));
            }
            for (std::size_t n = 0; n < a.size(); ++n) {
                t.add(norm2(a[n] - b[n]) / scale, "expansion paths");
            }
        }
        c.passed = t.ok();
        c.numbers = {{"max_rel_diff", t.worst}, {"tolerance", t.limit}, {"points", 20}};
        s.cases.push_back(c);
    }
    return s;
}

// ---------------------------------------------------------------- lax

json residual_numbers(const ResidualReport& r)
{
    return {{"max_residual", finite(r.max_residual(), "lax residual")},
            {"estimated_order", maybe(r.estimated_order)},
            {"order_samples", r.order_samples},
            {"points", r.points.size()},
            {"passed", r.passed}};
}

SuiteResult lax_suite(const SuiteOptions&)
{
    SuiteResult s{"lax", {}, 0.0};
    const Window window{-2.0, 2.0, -2.0, 2.0};
    double best_order = -std::numeric_limits<double>::infinity();
    for (double rho : {1.0, 2.5}) {
        for (int dim : {2, 3}) {
            const SpectralSetup setup(rho, dim);
            CVec z(dim);
            z[0] = 1.0;
            z[1] = 0.5 * kI;
            if (dim == 3) {
                z[2] = 0.25;
            }
            for (int k = 0; k < 2; ++k) {
                const cplx lambda = k == 0 ? cplx(0.3, 0.4) : cplx(0.0, rho);
                std::ostringstream name;
                name << "rho=" << rho << " dim=" << dim << " lambda=" << lambda_label(k);
                const LaxCheckReport rep = lax_check(setup, lambda, z, window);
                CaseResult c{name.str(), rep.passed(), json::object(), ""};
                c.numbers = {{"lax", residual_numbers(rep.lax)},
                             {"adjoint", residual_numbers(rep.adjoint)},
                             {"covariance", residual_numbers(rep.covariance)},
                             {"tolerance", rep.lax.tolerance},
                             {"h", rep.lax.h_sequence.back()}};
                for (const ResidualReport* r : {&rep.lax, &rep.adjoint, &rep.covariance}) {
                    if (std::isfinite(r->estimated_order)) {
                        best_order = std::max(best_order, r->estimated_order);
                    }
                }
                s.cases.push_back(c);
            }
        }
    }
    {
        CaseResult c{"convergence_order", best_order >= 3.5, json::object(), ""};
        c.numbers = {{"best_estimated_order", maybe(best_order)}, {"required", 3.5}};
        c.note = "orders come only from step pairs above the roundoff floor";
        s.cases.push_back(c);
    }
    {
        const SpectralSetup setup(1.0, 2);
        const CVec z(2);
        double worst = 0.0;
        for (const Point& pt : halton_points(10, window)) {
            worst = std::max(worst, norm2(fundamental_solution(setup, cplx(0.3, 0.4), pt.x, pt.t, z)));
        }
        CaseResult c{"zero_eigenvector", worst == 0.0, {{"max_norm", worst}}, ""};
        s.cases.push_back(c);
    }
    return s;
}

// ---------------------------------------------------------------- projector

SuiteResult projector_suite(const SuiteOptions& o)
{
    SuiteResult s{"projector", {}, 0.0};
    for (const std::string& name : preset_names()) {
        const Preset p = preset(name);
        const ResolvedWave wave = resolve(p.spec);
        const SpectralSetup& setup = wave.setup;
        const Window w = window_of(p.census_grid());
        DressOptions d = dress_options(o);
        d.track_lower_orders = true;

        Tally tr{0.0, 1e-10}, idem{0.0, 1e-9}, kernel{0.0, 1e-9}, den{0.0, 1e-12}, dual{0.0, 1e-9},
            lower{0.0, 1e-9};
        std::size_t used = 0, skipped = 0;
        for (std::size_t k = 1; used < 100 && k <= 1000; ++k) {
            const Point pt = halton_point(k, w);
            const ChainResult res = dress(wave, pt.x, pt.t, d);
            const ChainResult mir = dress(wave, pt.x, -pt.t, d);
            if (res.pole || mir.pole) {
                ++skipped;
                continue;
            }
            ++used;
            for (std::size_t m = 0; m < res.projectors.size(); ++m) {
                const Paired<CMat>& pr = res.projectors[m];
                for (const CMat* pm : {&pr.here, &pr.mirror}) {
                    tr.add(std::abs(trace(*pm) - 1.0), "projector trace");
                    idem.add(max_abs((*pm) * (*pm) - *pm), "projector idempotence");
                }
                kernel.add(res.kernel_residuals[m], "kernel residual");
                const cplx a = res.denominators[m].here;
                const cplx b = mir.denominators[m].mirror;
                den.add(std::abs(a - b) / std::abs(a), "denominator symmetry");
            }
            dual.add(dual_path_error(res, setup), "dual path");
            for (double v : res.lower_order_residuals) {
                lower.add(v, "lower-order residual");
            }
        }
        CaseResult c{name, false, json::object(), ""};
        c.passed = used == 100 && tr.ok() && idem.ok() && kernel.ok() && den.ok() && dual.ok() && lower.ok();
        c.numbers = {{"points", used},
                     {"skipped_poles", skipped},
                     {"trace_error", tr.worst},
                     {"idempotence_error", idem.worst},
                     {"kernel_residual", kernel.worst},
                     {"denominator_symmetry", den.worst},
                     {"formula_vs_commutator", dual.worst},
                     {"lower_order_residual", lower.worst},
                     {"tolerances",
                      {{"trace", tr.limit},
                       {"idempotence", idem.limit},
                       {"kernel", kernel.limit},
                       {"denominator", den.limit},
                       {"dual_path", dual.limit},
                       {"lower_order", lower.limit}}}};
        s.cases.push_back(c);
    }
    return s;
}

// ---------------------------------------------------------------- residual

SuiteResult residual_suite(const SuiteOptions& o)
{
    SuiteResult s{"residual", {}, 0.0};
    const auto t0 = Clock::now();
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}) {
        const Preset p = preset(name);
        const ResolvedWave wave = resolve(p.spec);
        const PairedEval f = wave_evaluator(wave, wave.order, dress_options(o));
        const ResidualReport rep =
            residual_report(f, halton_points(64, window_of(p.window)), equation_for(wave), 1e-4, kDefaultSteps);
        CaseResult c{name, rep.passed && rep.points.size() >= 50, json::object(), ""};
        c.numbers = {{"points", rep.points.size()},
                     {"skipped", rep.skipped},
                     {"max_residual", finite(rep.max_residual(), "PDE residual")},
                     {"estimated_order", maybe(rep.estimated_order)},
                     {"order_samples", rep.order_samples},
                     {"tolerance", rep.tolerance},
                     {"h", rep.h_sequence.back()}};
        s.cases.push_back(c);
    }
    const double secs = seconds_since(t0);
    s.cases.push_back({"budget", secs <= 60.0, {{"seconds", secs}, {"budget_seconds", 60.0}}, ""});

    {
        const ResolvedWave wave = resolve(preset("fig1").spec);
        const PairedEval f = wave_evaluator(wave, 0, dress_options(o));
        double worst = 0.0;
        for (const Point& pt : halton_points(20, {-10.0, 10.0, -10.0, 10.0})) {
            worst = std::max(worst, finite(norm2(pde_residual(f, pt, 1e-3, Equation::NonlocalScalar)), "seed"));
        }
        s.cases.push_back({"seed", worst <= 1e-8, {{"max_abs_residual", worst}, {"tolerance", 1e-8}}, ""});
    }
    {
        // A point close to a pole, where the truncation error dominates.
        const ResolvedWave wave = resolve(preset("fig2").spec);
        const PairedEval f = wave_evaluator(wave, wave.order, dress_options(o));
        const ResidualReport rep =
            residual_report(f, {{-9.375, 2.716}}, Equation::NonlocalScalar, 0.0, {8e-3, 4e-3, 2e-3});
        CaseResult c{"near_pole_order", rep.estimated_order >= 3.5 && rep.points.size() == 1, json::object(), ""};
        c.numbers = {{"x", -9.375}, {"t", 2.716}, {"estimated_order", maybe(rep.estimated_order)},
                     {"sweep", rep.sweep.empty() ? json::array() : json(rep.sweep.front())}};
        s.cases.push_back(c);
    }
    {
        const Preset p = preset("fig1");
        const ResolvedWave wave = resolve(p.spec);
        const PairedEval f = wave_evaluator(wave, wave.order, dress_options(o));
        CaseResult c{"nonlocality_witness", false, json::object(), ""};
        double best_local = 0.0;
        for (const Point& pt : halton_points(25, window_of(p.window))) {
            try {
                const CVec psi = f(pt.x, pt.t).here;
                const double local = normalized_residual(pde_residual(f, pt, 1e-3, Equation::LocalScalar), psi);
                const double nonlocal =
                    normalized_residual(pde_residual(f, pt, 1e-3, Equation::NonlocalScalar), psi);
                if (nonlocal <= 1e-5 && local > best_local) {
                    best_local = local;
                    c.numbers = {{"x", pt.x}, {"t", pt.t}, {"local_residual", local}, {"nonlocal_residual", nonlocal}};
                }
            } catch (const SingularPoint&) {
            } catch (const StencilHitPole&) {
            }
        }
        c.passed = best_local >= 0.1;
        c.numbers["required_local"] = 0.1;
        c.numbers["required_nonlocal"] = 1e-5;
        s.cases.push_back(c);
    }
    return s;
}

// ---------------------------------------------------------------- sign

SuiteResult sign_suite(const SuiteOptions& o)
{
    SuiteResult s{"sign", {}, 0.0};
    const Window window{-5.0, 5.0, -5.0, 5.0};
    std::vector<int> signs;
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        CaseResult c{std::string("adjudicate_") + name, false, json::object(), ""};
        try {
            const SignVerdict v = adjudicate_sign(resolve(preset(name).spec), window);
            c.passed = v.ratio >= kSignRatio;
            c.numbers = {{"sign", v.sign},
                         {"ratio", v.ratio},
                         {"median_plus", v.median_plus},
                         {"median_minus", v.median_minus},
                         {"samples", v.samples},
                         {"required_ratio", kSignRatio}};
            signs.push_back(v.sign);
        } catch (const AmbiguousSign& e) {
            c.numbers = {{"ratio", e.ratio()}, {"required_ratio", kSignRatio}};
            c.note = e.what();
        }
        s.cases.push_back(c);
    }
    const bool consistent = signs.size() == 3 && std::all_of(signs.begin(), signs.end(), [&](int v) {
                                return v == signs.front();
                            });
    s.cases.push_back({"consistent", consistent, {{"signs", signs}}, ""});
    s.cases.push_back({"matches_update_sign",
                       consistent && signs.front() == o.sign,
                       {{"adjudicated", signs.empty() ? json(nullptr) : json(signs.front())},
                        {"update_sign", o.sign}},
                       ""});

    Tally dual{0.0, 1e-9};
    std::size_t used = 0;
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        const ResolvedWave wave = resolve(preset(name).spec);
        for (const Point& pt : halton_points(25, window)) {
            const ChainResult res = dress(wave, pt.x, pt.t, dress_options(o));
            if (res.pole) {
                continue;
            }
            ++used;
            dual.add(dual_path_error(res, wave.setup), "dual path");
        }
    }
    s.cases.push_back({"formula_equals_commutator",
                       dual.ok() && used > 0,
                       {{"max_rel_diff", dual.worst}, {"tolerance", dual.limit}, {"points", used}},
                       ""});
    return s;
}

// ---------------------------------------------------------------- census

FieldGrid refined(const FieldGrid& g)
{
    FieldGrid r = g;
    r.nx = 2 * g.nx - 1;
    r.nt = 2 * g.nt - 1;
    return r;
}

json census_counts(const PoleCensus& c)
{
    std::vector<double> radii;
    for (const Cluster& k : c.clusters) {
        radii.push_back(k.radius);
    }
    std::sort(radii.begin(), radii.end());
    return {{"clusters", c.clusters.size()},
            {"bounded_peaks", c.bounded_peaks.size()},
            {"bands", c.bands},
            {"radii", radii}};
}

const BoundedPeak* central_peak(const PoleCensus& c, double radius)
{
    const BoundedPeak* best = nullptr;
    for (const BoundedPeak& p : c.bounded_peaks) {
        if (std::hypot(p.centroid.x, p.centroid.t) <= radius && (!best || p.height > best->height)) {
            best = &p;
        }
    }
    return best;
}

SuiteResult census_suite(const SuiteOptions& o)
{
    SuiteResult s{"census", {}, 0.0};
    const FieldOptions fo = field_options(o);
    for (const std::string& name : preset_names()) {
        const Preset p = preset(name);
        if (!p.expected) {
            continue;
        }
        const ResolvedWave wave = resolve(p.spec);
        const double rho = wave.setup.rho();
        const PoleCensus coarse = pole_census(evaluate_field(wave, p.census_grid(), fo), rho, p.census_threshold);
        const PoleCensus fine =
            pole_census(evaluate_field(wave, refined(p.census_grid()), fo), rho, p.census_threshold);
        CaseResult c{name, census_matches(coarse, *p.expected) && census_matches(fine, *p.expected),
                     json::object(), ""};
        c.numbers = {{"grid", census_counts(coarse)},
                     {"refined", census_counts(fine)},
                     {"expected", census_json(coarse, p.expected)["expected"]}};
        s.cases.push_back(c);
    }

    {
        const Preset p = preset("fig5");
        const ResolvedWave wave = resolve(p.spec);
        CaseResult c{"fig5_dark_bright_lines", true, json::object(), ""};
        for (double t : {-30.0, 30.0}) {
            const Profile pr = slice_x(wave, t, -20.0, 20.0, 801);
            const std::vector<double> m1 = pr.magnitude(0);
            const std::vector<double> m2 = pr.magnitude(1);
            const auto dip = std::min_element(m1.begin(), m1.end()) - m1.begin();
            const auto bump = std::max_element(m2.begin(), m2.end()) - m2.begin();
            const double x_dip = pr.coord[static_cast<std::size_t>(dip)];
            const double x_bump = pr.coord[static_cast<std::size_t>(bump)];
            const double end1 = std::max(std::abs(m1.front() - 1.0), std::abs(m1.back() - 1.0));
            const double end2 = std::max(m2.front(), m2.back());
            const bool ok = m1[static_cast<std::size_t>(dip)] < 0.9 && m2[static_cast<std::size_t>(bump)] > 0.1 &&
                            std::abs(x_dip - x_bump) <= 1.0 && end1 <= 0.05 && end2 <= 0.1;
            c.passed = c.passed && ok;
            c.numbers[t < 0 ? "t=-30" : "t=30"] = {{"dip", m1[static_cast<std::size_t>(dip)]},
                                                    {"dip_x", x_dip},
                                                    {"bump", m2[static_cast<std::size_t>(bump)]},
                                                    {"bump_x", x_bump},
                                                    {"edge_deviation_1", end1},
                                                    {"edge_magnitude_2", end2}};
        }
        s.cases.push_back(c);
    }
    {
        const Preset p = preset("fig6");
        const ResolvedWave wave = resolve(p.spec);
        CaseResult c{"fig6_ridges_and_central_peak", true, json::object(), ""};
        for (double t : {-15.0, 15.0}) {
            const Profile pr = slice_x(wave, t, p.window.x0, p.window.x1, 1201);
            const auto ridges = find_extrema(pr.coord, pr.magnitude(1), 0.1);
            const bool ok = ridges.size() == 2 && ridges[1].coord - ridges[0].coord >= 3.0;
            c.passed = c.passed && ok;
            json xs = json::array();
            for (const SlicePeak& r : ridges) {
                xs.push_back({{"x", r.coord}, {"height", r.value}});
            }
            c.numbers[t < 0 ? "ridges_t=-15" : "ridges_t=15"] = xs;
        }
        const double rho = wave.setup.rho();
        for (const FieldGrid& g : {p.window, refined(p.window)}) {
            const PoleCensus cen = pole_census(evaluate_field(wave, g, fo), rho, p.census_threshold);
            const BoundedPeak* centre = central_peak(cen, 1.0);
            const bool ok = cen.clusters.empty() && centre != nullptr;
            c.passed = c.passed && ok;
            c.numbers[g == p.window ? "grid" : "refined"] = {
                {"clusters", cen.clusters.size()},
                {"central_peak", centre ? json(centre->height) : json(nullptr)}};
        }
        s.cases.push_back(c);
    }
    return s;
}

// ---------------------------------------------------------------- background

SuiteResult background_suite(const SuiteOptions& o)
{
    SuiteResult s{"background", {}, 0.0};
    {
        const BackgroundReport r = background_check(resolve(preset("fig1").spec), 50.0, {-5.0, 0.0, 5.0}, 1e-2);
        s.cases.push_back({"fig1_far_field",
                           r.passed,
                           {{"max_deviation", finite(r.max_deviation, "background")}, {"tolerance", r.tolerance}},
                           ""});
    }
    {
        const ResolvedWave wave = resolve(preset("fig5").spec);
        double worst2 = 0.0, worst1 = 0.0;
        for (double t : {-30.0, 0.0, 30.0}) {
            for (double x : {-60.0, 60.0}) {
                const RoguePoint rp = rogue_point(wave, x, t, dress_options(o));
                const CVec& psi = rp.psi.back();
                worst1 = std::max(worst1, finite(std::abs(std::abs(psi[0]) - wave.setup.rho()), "background"));
                worst2 = std::max(worst2, finite(std::abs(psi[1]), "background"));
            }
        }
        s.cases.push_back({"fig5_component_two_decays",
                           worst2 <= 1e-2 && worst1 <= 1e-2,
                           {{"max_component_two", worst2}, {"max_deviation_one", worst1}, {"tolerance", 1e-2}},
                           ""});
    }
    return s;
}

} // namespace

bool SuiteResult::passed() const
{
    return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
}

const CaseResult* SuiteResult::find(const std::string& name) const
{
    for (const CaseResult& c : cases) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"oracle", "lax",    "projector", "residual",
                                                   "sign",   "census", "background"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options)
{
    const auto t0 = Clock::now();
    SuiteResult r;
    if (name == "oracle") {
        r = oracle_suite(options);
    } else if (name == "lax") {
        r = lax_suite(options);
    } else if (name == "projector") {
        r = projector_suite(options);
    } else if (name == "residual") {
        r = residual_suite(options);
    } else if (name == "sign") {
        r = sign_suite(options);
    } else if (name == "census") {
        r = census_suite(options);
    } else if (name == "background") {
        r = background_suite(options);
    } else {
        throw UsageError("unknown suite '" + name + "'");
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<std::string> parse_suite_list(const std::string& text)
{
    if (text.empty() || text == "all") {
        return suite_names();
    }
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find(',', start);
        const std::string name = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            throw UsageError("unknown suite '" + name + "'");
        }
        if (std::find(out.begin(), out.end(), name) == out.end()) {
            out.push_back(name);
        }
        if (pos == std::string::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

json report_json(const std::vector<SuiteResult>& results, const SuiteOptions& options)
{
    json suites = json::array();
    bool all = true;
    for (const SuiteResult& r : results) {
        json cases = json::array();
        for (const CaseResult& c : r.cases) {
            json jc = {{"name", c.name}, {"passed", c.passed}, {"numbers", c.numbers}};
            if (!c.note.empty()) {
                jc["note"] = c.note;
            }
            cases.push_back(jc);
        }
        suites.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"seconds", r.seconds}, {"cases", cases}});
        all = all && r.passed();
    }
    return {{"artifact", kArtifactName},
            {"version", kArtifactVersion},
            {"update_sign_build", kUpdateSign},
            {"update_sign_used", options.sign},
            {"suites", suites},
            {"passed", all}};
}

} // namespace rogue
