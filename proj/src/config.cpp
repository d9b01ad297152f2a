#include "mpb/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace mpb {

using nlohmann::json;

ParseError::ParseError(const std::string& field, std::size_t line, const std::string& what)
    : std::runtime_error(what), field_(field), line_(line) {}

const char* to_string(SweepVariable v) noexcept { return v == SweepVariable::delta_p ? "delta_p" : "omega_c"; }
const char* to_string(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ValidationError("output format must be csv or json, got '" + s + "'");
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = points == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return g;
}

SystemParams Series::apply(const SystemParams& base) const {
    SystemParams p = base;
    if (omega_c) p.omega_c = *omega_c;
    if (phi_z) p.phi_z = *phi_z;
    if (eta) p.eta = *eta;
    if (g) p.g = *g;
    if (n_max) p.n_max = *n_max;
    return p;
}

std::string Series::label() const {
    std::ostringstream os;
    const char* sep = "";
    auto put = [&](const char* name, auto v) {
        if (v) {
            os << sep << name << '=' << *v;
            sep = ";";
        }
    };
    put("omega_c", omega_c);
    put("phi_z", phi_z);
    put("eta", eta);
    put("g", g);
    put("n_max", n_max);
    const auto s = os.str();
    return s.empty() ? "base" : s;
}

int default_n_max(double eta) { return eta <= 0.5 ? 6 : 8; }

std::vector<SystemParams> RunConfig::series_params() const {
    std::vector<SystemParams> out;
    for (const auto& s : series) {
        auto p = s.apply(params);
        if (!n_max_explicit && !s.n_max) p.n_max = default_n_max(p.eta);
        out.push_back(p);
    }
    return out;
}

void RunConfig::validate() const {
    if (sweep.points < 1) throw ValidationError("sweep.points must be >= 1");
    if (!(sweep.start <= sweep.stop)) throw ValidationError("sweep.start must be <= sweep.stop");
    if (!std::isfinite(sweep.start) || !std::isfinite(sweep.stop)) throw ValidationError("sweep bounds must be finite");
    if (workers < 1) throw ValidationError("workers must be >= 1");
    if (series.empty()) throw ValidationError("series must not be empty");
    for (const auto& p : series_params()) {
        try {
            p.validate();
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string("params: ") + e.what());
        }
        if (sweep.variable == SweepVariable::omega_c && sweep.start < 0.0) {
            throw ValidationError("sweep over omega_c must start at >= 0");
        }
    }
    if (kind == RunKind::energy_differences) {
        if (sweep.variable != SweepVariable::omega_c) {
            throw ValidationError("energy differences are swept over omega_c only");
        }
        if (params.g <= 0.0) throw ValidationError("energy differences need g > 0");
    }
}

namespace {

struct Preset {
    const char* name;
    double eta;
    double phi_z;
    std::vector<double> omega_c;
    RunKind kind;
    int n_max = 0;   // 0: chosen from eta
};

const std::vector<Preset>& presets() {
    const double pi = std::numbers::pi;
    static const std::vector<Preset> p = {
        {"fig3", 0.2, 0.0, {0.0, 20.0}, RunKind::spectrum},
        {"fig4a", 1.5, 0.0, {0.0}, RunKind::spectrum},
        {"fig4b", 1.5, 0.0, {35.0}, RunKind::spectrum},
        // Both out-of-phase spectra need more than the default cutoff at
        // Delta_p = 0: fig5a still populates |8> at 1e-4, and the strongly
        // bunched fig5b state has g3 off by 1% at n_max = 8.
        {"fig5a", 2.0, pi, {0.0}, RunKind::spectrum, 12},
        {"fig5b", 2.0, pi, {20.0}, RunKind::spectrum, 10},
        {"fig6a", 0.2, 0.0, {}, RunKind::energy_differences},
        {"fig6b", 0.2, 0.0, {}, RunKind::energy_differences},
    };
    return p;
}

// ---------------------------------------------------------------------------

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            const std::string f = path.empty() ? key : path + "." + key;
            throw ParseError(f, 0, "unknown key '" + f + "'");
        }
    }
}

const json& require_object(const json& v, const std::string& path) {
    if (!v.is_object()) throw ParseError(path, 0, "'" + path + "' must be an object");
    return v;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path, 0, "'" + path + "' must be a number");
    return v.get<double>();
}

long long integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError(path, 0, "'" + path + "' must be an integer");
    return v.get<long long>();
}

std::string string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ParseError(path, 0, "'" + path + "' must be a string");
    return v.get<std::string>();
}

int int_in_range(const json& v, const std::string& path, long long lo, long long hi) {
    const auto x = integer(v, path);
    if (x < lo || x > hi) {
        throw ValidationError("'" + path + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
}

void read_params(const json& obj, RunConfig& cfg) {
    require_object(obj, "params");
    reject_unknown(obj, "params", {"g", "phi_z", "eta", "omega_c", "delta_p", "delta_c", "kappa", "gamma_m",
                                   "gamma_e", "n_max", "decay"});
    auto& p = cfg.params;
    const std::pair<const char*, double*> fields[] = {
        {"g", &p.g},           {"phi_z", &p.phi_z},   {"eta", &p.eta},         {"omega_c", &p.omega_c},
        {"delta_p", &p.delta_p}, {"delta_c", &p.delta_c}, {"kappa", &p.kappa}, {"gamma_m", &p.gamma_m},
        {"gamma_e", &p.gamma_e},
    };
    for (const auto& [key, dst] : fields) {
        if (obj.contains(key)) *dst = number(obj.at(key), std::string("params.") + key);
    }
    if (obj.contains("n_max")) {
        p.n_max = int_in_range(obj.at("n_max"), "params.n_max", 1, 64);
        cfg.n_max_explicit = true;
    }
    if (obj.contains("decay")) {
        try {
            p.decay = decay_convention_from_string(string(obj.at("decay"), "params.decay"));
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string("params.decay: ") + e.what());
        }
    }
}

void read_sweep(const json& obj, RunConfig& cfg) {
    require_object(obj, "sweep");
    reject_unknown(obj, "sweep", {"variable", "start", "stop", "points"});
    auto& s = cfg.sweep;
    if (obj.contains("variable")) {
        const auto v = string(obj.at("variable"), "sweep.variable");
        if (v == "delta_p") s.variable = SweepVariable::delta_p;
        else if (v == "omega_c") s.variable = SweepVariable::omega_c;
        else throw ValidationError("sweep.variable must be delta_p or omega_c, got '" + v + "'");
    }
    if (obj.contains("start")) s.start = number(obj.at("start"), "sweep.start");
    if (obj.contains("stop")) s.stop = number(obj.at("stop"), "sweep.stop");
    if (obj.contains("points")) {
        const auto n = integer(obj.at("points"), "sweep.points");
        if (n < 1) throw ValidationError("sweep.points must be >= 1");
        s.points = static_cast<std::size_t>(n);
    }
}

void read_series(const json& arr, RunConfig& cfg) {
    if (!arr.is_array()) throw ParseError("series", 0, "'series' must be an array");
    if (arr.empty()) throw ValidationError("series must not be empty");
    cfg.series.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "series[" + std::to_string(i) + "]";
        const auto& obj = require_object(arr[i], path);
        reject_unknown(obj, path, {"omega_c", "phi_z", "eta", "g", "n_max"});
        Series s;
        if (obj.contains("omega_c")) s.omega_c = number(obj.at("omega_c"), path + ".omega_c");
        if (obj.contains("phi_z")) s.phi_z = number(obj.at("phi_z"), path + ".phi_z");
        if (obj.contains("eta")) s.eta = number(obj.at("eta"), path + ".eta");
        if (obj.contains("g")) s.g = number(obj.at("g"), path + ".g");
        if (obj.contains("n_max")) s.n_max = int_in_range(obj.at("n_max"), path + ".n_max", 1, 64);
        cfg.series.push_back(s);
    }
}

void read_output(const json& obj, RunConfig& cfg) {
    require_object(obj, "output");
    reject_unknown(obj, "output", {"path", "format"});
    if (obj.contains("path")) cfg.output.path = string(obj.at("path"), "output.path");
    if (obj.contains("format")) cfg.output.format = output_format_from_string(string(obj.at("format"), "output.format"));
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& p : presets()) n.emplace_back(p.name);
        return n;
    }();
    return names;
}

RunConfig preset_config(const std::string& name) {
    const auto& all = presets();
    const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return name == p.name; });
    if (it == all.end()) {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw ValidationError("unknown preset '" + name + "' (known: " + known + ")");
    }
    RunConfig c;
    c.preset = name;
    c.kind = it->kind;
    c.params = SystemParams{};
    c.params.g = 20.0;
    c.params.gamma_m = 1.0;
    c.params.gamma_e = 0.01;
    c.params.eta = it->eta;
    c.params.phi_z = it->phi_z;
    if (c.kind == RunKind::energy_differences) {
        c.sweep = {SweepVariable::omega_c, 0.0, 35.0, 351};
        c.series = {Series{}};
    } else {
        c.sweep = {SweepVariable::delta_p, -60.0, 60.0, 801};
        c.params.omega_c = it->omega_c.front();
        c.series.clear();
        for (double oc : it->omega_c) {
            Series s;
            if (it->omega_c.size() > 1) s.omega_c = oc;
            c.series.push_back(s);
        }
    }
    c.params.n_max = it->n_max > 0 ? it->n_max : default_n_max(c.params.eta);
    c.n_max_explicit = it->n_max > 0;
    return c;
}

RunConfig load_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("", line, "config line " + std::to_string(line) + ": " + e.what());
    }
    require_object(doc, "<root>");
    reject_unknown(doc, "", {"preset", "params", "sweep", "series", "output", "workers"});

    RunConfig cfg;
    if (doc.contains("preset")) cfg = preset_config(string(doc.at("preset"), "preset"));
    if (doc.contains("params")) read_params(doc.at("params"), cfg);
    if (doc.contains("sweep")) read_sweep(doc.at("sweep"), cfg);
    if (doc.contains("series")) read_series(doc.at("series"), cfg);
    if (doc.contains("output")) read_output(doc.at("output"), cfg);
    if (doc.contains("workers")) cfg.workers = static_cast<unsigned>(int_in_range(doc.at("workers"), "workers", 1, 1024));
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

std::optional<unsigned> workers_from_env() {
    const char* v = std::getenv("MPB_WORKERS");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) return std::nullopt;
    return static_cast<unsigned>(n);
}

} // namespace mpb
