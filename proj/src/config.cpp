#include "rogue/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace rogue {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError(path, what);
}

std::string child(const std::string& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string item(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

void check_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    if (!j.is_object()) {
        fail(path.empty() ? "(root)" : path, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            fail(child(path, key), "unknown field");
        }
    }
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "expected a finite number");
    }
    return v;
}

int integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    const auto v = j.get<long long>();
    if (v < -1000000000LL || v > 1000000000LL) {
        fail(path, "integer out of range");
    }
    return static_cast<int>(v);
}

std::string text(const json& j, const std::string& path)
{
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

cplx complex_at(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected a complex number [re, im]");
    }
    return {number(j[0], item(path, 0)), number(j[1], item(path, 1))};
}

std::vector<cplx> complex_list(const json& j, const std::string& path)
{
    if (!j.is_array()) {
        fail(path, "expected an array of [re, im] pairs");
    }
    std::vector<cplx> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(complex_at(j[i], item(path, i)));
    }
    return out;
}

CVec complex_vec(const json& j, const std::string& path, int dim)
{
    const std::vector<cplx> v = complex_list(j, path);
    if (static_cast<int>(v.size()) != dim) {
        fail(path, "expected " + std::to_string(dim) + " components");
    }
    CVec out(dim);
    for (int i = 0; i < dim; ++i) {
        out[i] = v[static_cast<std::size_t>(i)];
    }
    return out;
}

json complex_list_json(const std::vector<cplx>& v)
{
    json out = json::array();
    for (const cplx& c : v) {
        out.push_back(complex_json(c));
    }
    return out;
}

json vec_json(const CVec& v)
{
    json out = json::array();
    for (const cplx& c : v) {
        out.push_back(complex_json(c));
    }
    return out;
}

WaveSpec parse_spec(const json& j, const std::string& path, const WaveSpec& base, bool have_base)
{
    check_object(j, path, {"kind", "rho", "order", "omega", "generating"});
    int dim = base.setup.dim();
    if (j.contains("kind")) {
        const std::string kind = text(j["kind"], child(path, "kind"));
        if (kind == "scalar") {
            dim = 2;
        } else if (kind == "vector") {
            dim = 3;
        } else {
            fail(child(path, "kind"), "expected \"scalar\" or \"vector\"");
        }
    } else if (!have_base) {
        fail(child(path, "kind"), "required");
    }

    double rho = base.setup.rho();
    if (j.contains("rho")) {
        rho = number(j["rho"], child(path, "rho"));
    }
    if (!(rho > 0.0)) {
        fail(child(path, "rho"), "must be positive");
    }

    int order = base.order;
    if (j.contains("order")) {
        order = integer(j["order"], child(path, "order"));
    } else if (!have_base) {
        fail(child(path, "order"), "required");
    }
    if (order < 1 || order > kMaxWaveOrder) {
        fail(child(path, "order"), "must be in [1, " + std::to_string(kMaxWaveOrder) + "], got " + std::to_string(order));
    }

    if (j.contains("omega") && j.contains("generating")) {
        fail(path, "omega and generating are exclusive");
    }
    WaveSpec spec{SpectralSetup(rho, dim), order, base.source};
    if (j.contains("omega")) {
        const std::string p = child(path, "omega");
        const json& om = j["omega"];
        if (!om.is_array() || om.empty()) {
            fail(p, "expected a non-empty array of vectors");
        }
        OmegaSeries s;
        for (std::size_t k = 0; k < om.size(); ++k) {
            s.omega.push_back(complex_vec(om[k], item(p, k), dim));
        }
        spec.source = s;
    } else if (j.contains("generating")) {
        const std::string p = child(path, "generating");
        const json& g = j["generating"];
        check_object(g, p, {"l", "r", "s"});
        if (!g.contains("l")) {
            fail(child(p, "l"), "required");
        }
        GeneratingForm gf;
        gf.l = complex_vec(g["l"], child(p, "l"), dim);
        if (g.contains("r")) {
            gf.r = complex_list(g["r"], child(p, "r"));
        }
        if (g.contains("s")) {
            gf.s = complex_list(g["s"], child(p, "s"));
        }
        spec.source = gf;
    } else if (!have_base || dim != base.setup.dim()) {
        fail(path, "omega or generating required");
    }
    try {
        spec.validate();
    } catch (const UsageError& e) {
        fail(path, e.what());
    }
    return spec;
}

FieldGrid parse_grid_json(const json& j, const std::string& path, FieldGrid g)
{
    check_object(j, path, {"x0", "x1", "nx", "t0", "t1", "nt"});
    if (j.contains("x0")) {
        g.x0 = number(j["x0"], child(path, "x0"));
    }
    if (j.contains("x1")) {
        g.x1 = number(j["x1"], child(path, "x1"));
    }
    if (j.contains("nx")) {
        g.nx = integer(j["nx"], child(path, "nx"));
    }
    if (j.contains("t0")) {
        g.t0 = number(j["t0"], child(path, "t0"));
    }
    if (j.contains("t1")) {
        g.t1 = number(j["t1"], child(path, "t1"));
    }
    if (j.contains("nt")) {
        g.nt = integer(j["nt"], child(path, "nt"));
    }
    try {
        g.validate();
    } catch (const UsageError& e) {
        fail(path, e.what());
    }
    return g;
}

std::optional<int> optional_count(const json& j, const std::string& path)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    const int v = integer(j, path);
    if (v < 0) {
        fail(path, "must be non-negative");
    }
    return v;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

bool parse_real(std::string_view s, double& out)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

int parse_int(std::string_view s, const char* what)
{
    int v = 0;
    const std::string t = trim(s);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw UsageError(std::string("bad integer for ") + what + ": '" + t + "'");
    }
    return v;
}

} // namespace

json complex_json(cplx c)
{
    return json::array({c.real(), c.imag()});
}

json spec_json(const WaveSpec& spec)
{
    json j;
    j["kind"] = spec.setup.dim() == 2 ? "scalar" : "vector";
    j["rho"] = spec.setup.rho();
    j["order"] = spec.order;
    if (const auto* om = std::get_if<OmegaSeries>(&spec.source)) {
        json arr = json::array();
        for (const CVec& w : om->omega) {
            arr.push_back(vec_json(w));
        }
        j["omega"] = arr;
    } else {
        const auto& gf = std::get<GeneratingForm>(spec.source);
        j["generating"] = {{"l", vec_json(gf.l)}, {"r", complex_list_json(gf.r)}, {"s", complex_list_json(gf.s)}};
    }
    return j;
}

json grid_json(const FieldGrid& g)
{
    return {{"x0", g.x0}, {"x1", g.x1}, {"nx", g.nx}, {"t0", g.t0}, {"t1", g.t1}, {"nt", g.nt}};
}

RunConfig config_from_preset(const Preset& p)
{
    RunConfig c;
    c.preset = p.name;
    c.spec = p.spec;
    c.grid = p.window;
    c.census_window = p.census_window;
    c.expected = p.expected;
    c.thresholds.census = p.census_threshold;
    return c;
}

Preset to_preset(const RunConfig& c)
{
    return {c.preset, c.spec, c.grid, c.thresholds.census, c.expected, c.census_window};
}

json to_json(const RunConfig& c)
{
    json j;
    if (!c.preset.empty()) {
        j["preset"] = c.preset;
    }
    j["spec"] = spec_json(c.spec);
    j["grid"] = grid_json(c.grid);
    j["census_window"] = c.census_window ? grid_json(*c.census_window) : json(nullptr);
    if (c.expected) {
        const CensusExpectation& e = *c.expected;
        j["expected"] = {{"clusters", e.clusters},
                         {"bounded_peaks", e.bounded_peaks ? json(*e.bounded_peaks) : json(nullptr)},
                         {"bands", e.bands ? json(*e.bands) : json(nullptr)}};
    } else {
        j["expected"] = nullptr;
    }
    json out = json::object();
    if (c.outputs.csv) {
        out["csv"] = *c.outputs.csv;
    }
    if (c.outputs.json) {
        out["json"] = *c.outputs.json;
    }
    if (c.outputs.ppm) {
        out["ppm"] = *c.outputs.ppm;
    }
    j["outputs"] = out;
    j["thresholds"] = {{"pole", c.thresholds.pole}, {"census", c.thresholds.census}};
    j["threads"] = c.threads;
    return j;
}

std::string serialize(const RunConfig& c)
{
    return to_json(c).dump(2) + "\n";
}

std::string serialize(const Preset& p)
{
    return serialize(config_from_preset(p));
}

RunConfig parse_config(const json& doc)
{
    check_object(doc, "", {"preset", "spec", "grid", "census_window", "expected", "outputs", "thresholds", "threads"});
    RunConfig c;
    const bool have_base = doc.contains("preset");
    if (have_base) {
        const std::string name = text(doc["preset"], "preset");
        try {
            c = config_from_preset(preset(name));
        } catch (const UsageError& e) {
            fail("preset", e.what());
        }
    }

    if (doc.contains("spec")) {
        c.spec = parse_spec(doc["spec"], "spec", c.spec, have_base);
    } else if (!have_base) {
        fail("spec", "required without a preset");
    }

    if (doc.contains("grid")) {
        c.grid = parse_grid_json(doc["grid"], "grid", c.grid);
    } else if (!have_base) {
        fail("grid", "required without a preset");
    }

    if (doc.contains("census_window")) {
        const json& w = doc["census_window"];
        if (w.is_null()) {
            c.census_window.reset();
        } else {
            c.census_window = parse_grid_json(w, "census_window", c.census_window.value_or(c.grid));
        }
    }

    if (doc.contains("expected")) {
        const json& e = doc["expected"];
        if (e.is_null()) {
            c.expected.reset();
        } else {
            check_object(e, "expected", {"clusters", "bounded_peaks", "bands"});
            CensusExpectation x;
            if (!e.contains("clusters")) {
                fail("expected.clusters", "required");
            }
            x.clusters = optional_count(e["clusters"], "expected.clusters").value_or(0);
            if (e.contains("bounded_peaks")) {
                x.bounded_peaks = optional_count(e["bounded_peaks"], "expected.bounded_peaks");
            }
            if (e.contains("bands")) {
                x.bands = optional_count(e["bands"], "expected.bands");
            }
            c.expected = x;
        }
    }

    if (doc.contains("outputs")) {
        const json& o = doc["outputs"];
        check_object(o, "outputs", {"csv", "json", "ppm"});
        auto path_of = [&](const char* key, std::optional<std::string>& dst) {
            if (!o.contains(key)) {
                return;
            }
            if (o[key].is_null()) {
                dst.reset();
            } else {
                dst = text(o[key], child("outputs", key));
            }
        };
        path_of("csv", c.outputs.csv);
        path_of("json", c.outputs.json);
        path_of("ppm", c.outputs.ppm);
    }

    if (doc.contains("thresholds")) {
        const json& t = doc["thresholds"];
        check_object(t, "thresholds", {"pole", "census"});
        if (t.contains("pole")) {
            c.thresholds.pole = number(t["pole"], "thresholds.pole");
            if (!(c.thresholds.pole >= 0.0)) {
                fail("thresholds.pole", "must be non-negative");
            }
        }
        if (t.contains("census")) {
            c.thresholds.census = number(t["census"], "thresholds.census");
            if (!(c.thresholds.census > 0.0)) {
                fail("thresholds.census", "must be positive");
            }
        }
    }

    if (doc.contains("threads")) {
        c.threads = integer(doc["threads"], "threads");
        if (c.threads < 0) {
            fail("threads", "must be non-negative");
        }
    }
    return c;
}

RunConfig parse_config(std::string_view text_doc)
{
    json doc;
    try {
        doc = json::parse(text_doc);
    } catch (const json::parse_error& e) {
        fail("(root)", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(std::string_view(ss.str()));
}

cplx parse_complex(std::string_view raw)
{
    const std::string s = trim(raw);
    auto bad = [&]() -> UsageError { return UsageError("bad complex number '" + s + "'"); };
    if (s.empty()) {
        throw bad();
    }
    if (s.back() != 'i') {
        double re = 0.0;
        if (!parse_real(s, re)) {
            throw bad();
        }
        return {re, 0.0};
    }
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split_at = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    double re = 0.0;
    std::string imag = body;
    if (split_at != std::string::npos) {
        if (!parse_real(body.substr(0, split_at), re)) {
            throw bad();
        }
        imag = body.substr(split_at);
    }
    double im = 0.0;
    if (imag.empty() || imag == "+") {
        im = 1.0;
    } else if (imag == "-") {
        im = -1.0;
    } else if (!parse_real(imag, im)) {
        throw bad();
    }
    return {re, im};
}

std::vector<cplx> parse_complex_list(std::string_view text_list)
{
    std::vector<cplx> out;
    if (trim(text_list).empty()) {
        return out;
    }
    for (const std::string& part : split(text_list, ',')) {
        out.push_back(parse_complex(part));
    }
    return out;
}

std::vector<CVec> parse_omega(std::string_view text_omega)
{
    std::vector<CVec> out;
    for (const std::string& part : split(text_omega, ';')) {
        const std::vector<cplx> v = parse_complex_list(part);
        if (v.empty()) {
            throw UsageError("empty omega vector in '" + std::string(text_omega) + "'");
        }
        CVec w(static_cast<int>(v.size()));
        for (int i = 0; i < w.size(); ++i) {
            w[i] = v[static_cast<std::size_t>(i)];
        }
        if (!out.empty() && w.size() != out.front().size()) {
            throw UsageError("omega vectors differ in length in '" + std::string(text_omega) + "'");
        }
        out.push_back(w);
    }
    return out;
}

FieldGrid parse_grid(std::string_view text_grid)
{
    const std::vector<std::string> f = split(text_grid, ',');
    if (f.size() != 6) {
        throw UsageError("grid needs x0,x1,nx,t0,t1,nt, got '" + std::string(text_grid) + "'");
    }
    FieldGrid g;
    auto real = [](const std::string& s, const char* what) {
        double v = 0.0;
        if (!parse_real(s, v)) {
            throw UsageError(std::string("bad number for ") + what + ": '" + s + "'");
        }
        return v;
    };
    g.x0 = real(f[0], "x0");
    g.x1 = real(f[1], "x1");
    g.nx = parse_int(f[2], "nx");
    g.t0 = real(f[3], "t0");
    g.t1 = real(f[4], "t1");
    g.nt = parse_int(f[5], "nt");
    g.validate();
    return g;
}

} // namespace rogue
