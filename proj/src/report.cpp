#include "mpb/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace mpb {

using nlohmann::ordered_json;

std::string format_number(double x) {
    if (!std::isfinite(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    // avoid "-0" so output does not depend on the sign of a zero
    if (std::string(buf) == "-0") return "0";
    return buf;
}

namespace {

// value as printed, so JSON and CSV carry the same digits
ordered_json rounded(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(format_number(x).c_str(), nullptr);
}

ordered_json rounded(const std::optional<double>& x) { return x ? rounded(*x) : ordered_json(nullptr); }

std::vector<std::string> row_flags(const Observables& o) {
    std::vector<std::string> f;
    if (!o.correlations_defined()) f.emplace_back("undefined_correlation");
    if (o.top_fock_pop > kTruncationWarning) f.emplace_back("truncation_warning");
    return f;
}

ordered_json params_json(const SystemParams& p) {
    return {{"g", rounded(p.g)},           {"phi_z", rounded(p.phi_z)},     {"eta", rounded(p.eta)},
            {"omega_c", rounded(p.omega_c)}, {"delta_p", rounded(p.delta_p)}, {"delta_c", rounded(p.delta_c)},
            {"kappa", rounded(p.kappa)},   {"gamma_m", rounded(p.gamma_m)}, {"gamma_e", rounded(p.gamma_e)},
            {"n_max", p.n_max},            {"decay", to_string(p.decay)}};
}

bool two_photon_panel(const RunConfig& c) { return !c.preset || *c.preset != "fig6b"; }
bool three_photon_panel(const RunConfig& c) { return !c.preset || *c.preset != "fig6a"; }

std::vector<std::pair<const char*, double>> energy_columns(const RunConfig& c, const EnergyDifferences& d) {
    std::vector<std::pair<const char*, double>> cols;
    if (two_photon_panel(c)) {
        cols.emplace_back("dE2ph_plus", d.dE2ph_plus);
        cols.emplace_back("dE2ph_minus", d.dE2ph_minus);
    }
    if (three_photon_panel(c)) {
        cols.emplace_back("dE3ph_plus", d.dE3ph_plus);
        cols.emplace_back("dE3ph_minus", d.dE3ph_minus);
        cols.emplace_back("dE3ph_prime_plus", d.dE3ph_prime_plus);
        cols.emplace_back("dE3ph_prime_minus", d.dE3ph_prime_minus);
    }
    return cols;
}

} // namespace

RunResult execute(const RunConfig& cfg) {
    cfg.validate();
    RunResult r;
    r.config = cfg;
    const auto grid = cfg.sweep.grid();

    if (cfg.kind == RunKind::energy_differences) {
        const auto rc = radiation_case(cfg.params.phi_z);
        for (double oc : grid) r.energy.push_back({oc, energy_differences(rc, cfg.params.g, oc)});
        return r;
    }

    SweepOptions opt;
    opt.workers = cfg.workers;
    const auto sp = cfg.series_params();
    for (std::size_t s = 0; s < sp.size(); ++s) {
        std::vector<SystemParams> pts(grid.size(), sp[s]);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (cfg.sweep.variable == SweepVariable::delta_p) pts[i].delta_p = grid[i];
            else pts[i].omega_c = grid[i];
        }
        auto obs = solve_points(pts, opt);
        SeriesResult sr{cfg.series[s].label(), sp[s], {}};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto flags = row_flags(obs[i]);
            sr.rows.push_back({grid[i], std::move(obs[i]), std::move(flags)});
        }
        r.series.push_back(std::move(sr));
    }
    return r;
}

void write_csv(const RunResult& r, std::ostream& os) {
    if (r.config.kind == RunKind::energy_differences) {
        os << "omega_c";
        for (const auto& [name, v] : energy_columns(r.config, EnergyDifferences{})) os << ',' << name;
        os << '\n';
        for (const auto& row : r.energy) {
            os << format_number(row.omega_c);
            for (const auto& [name, v] : energy_columns(r.config, row.d)) os << ',' << format_number(v);
            os << '\n';
        }
        return;
    }
    os << "sweep_var,mean_n,g2,g3,top_fock_pop,flags,series\n";
    for (const auto& s : r.series) {
        for (const auto& row : s.rows) {
            os << format_number(row.sweep_value) << ',' << format_number(row.obs.mean_n) << ','
               << format_number(row.obs.g2.value_or(NAN)) << ',' << format_number(row.obs.g3.value_or(NAN)) << ','
               << format_number(row.obs.top_fock_pop) << ',';
            for (std::size_t k = 0; k < row.flags.size(); ++k) os << (k ? "|" : "") << row.flags[k];
            os << ',' << s.label << '\n';
        }
    }
}

void write_json(const RunResult& r, std::ostream& os) {
    ordered_json doc;
    doc["preset"] = r.config.preset ? ordered_json(*r.config.preset) : ordered_json(nullptr);
    doc["sweep_variable"] = to_string(r.config.sweep.variable);
    if (r.config.kind == RunKind::energy_differences) {
        doc["kind"] = "energy_differences";
        doc["g"] = rounded(r.config.params.g);
        doc["case"] = to_string(radiation_case(r.config.params.phi_z));
        auto rows = ordered_json::array();
        for (const auto& row : r.energy) {
            ordered_json j;
            j["omega_c"] = rounded(row.omega_c);
            for (const auto& [name, v] : energy_columns(r.config, row.d)) j[name] = rounded(v);
            rows.push_back(std::move(j));
        }
        doc["rows"] = std::move(rows);
    } else {
        doc["kind"] = "spectrum";
        auto series = ordered_json::array();
        for (const auto& s : r.series) {
            ordered_json js;
            js["label"] = s.label;
            js["params"] = params_json(s.params);
            auto rows = ordered_json::array();
            for (const auto& row : s.rows) {
                rows.push_back({{"sweep_var", rounded(row.sweep_value)},
                                {"mean_n", rounded(row.obs.mean_n)},
                                {"g2", rounded(row.obs.g2)},
                                {"g3", rounded(row.obs.g3)},
                                {"top_fock_pop", rounded(row.obs.top_fock_pop)},
                                {"flags", row.flags}});
            }
            js["rows"] = std::move(rows);
            series.push_back(std::move(js));
        }
        doc["series"] = std::move(series);
    }
    os << doc.dump(2) << '\n';
}

void write_output(const RunResult& r, const OutputSpec& out) {
    if (out.path.empty()) throw IoError("output path is empty");
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + out.path + "' for writing");
    if (out.format == OutputFormat::csv) write_csv(r, f);
    else write_json(r, f);
    f.flush();
    if (!f) throw IoError("write to '" + out.path + "' failed");
}

// ---------------------------------------------------------------------------

DressedReport dressed_report(double g, double omega_c, RadiationCase c) {
    if (!(g >= 0.0) || !(omega_c >= 0.0) || !std::isfinite(g) || !std::isfinite(omega_c)) {
        throw std::invalid_argument("dressed report needs finite g >= 0 and omega_c >= 0");
    }
    DressedReport r{g, omega_c, c, peak_splitting(g, omega_c), {}, {}, {}, energy_differences(c, g, omega_c)};
    for (int n = 1; n <= 3; ++n) r.manifolds.push_back(analytic_spectrum(c, n, g, omega_c));

    const auto gp = c == RadiationCase::in_phase ? 2 * g : 0.0;
    const auto gm = c == RadiationCase::in_phase ? 0.0 : 2 * g;
    const auto ground = numeric_spectrum(0, gp, gm, omega_c);
    const Eigen::MatrixXd t1 = transition_strengths(ground, r.manifolds[0]);
    const Eigen::MatrixXd t2 = transition_strengths(r.manifolds[0], r.manifolds[1]);
    const double scale = std::max({1.0, g, omega_c});
    const double zero = 1e-9 * scale;

    // roundoff around the degenerate zero modes is noise in a printed table
    for (auto& m : r.manifolds) {
        for (Eigen::Index j = 0; j < m.eigenvalues.size(); ++j)
            if (std::abs(m.eigenvalues(j)) < 1e-12 * scale) m.eigenvalues(j) = 0.0;
    }

    const auto& m1 = r.manifolds[0];
    for (Eigen::Index j = 0; j < m1.eigenvalues.size(); ++j) {
        if (std::abs(m1.eigenvalues(j)) <= zero) continue;
        r.one_photon.push_back({m1.eigenvalues(j), m1.state_labels[static_cast<std::size_t>(j)], std::abs(t1(j, 0)) > 1e-9});
    }
    const auto& m2 = r.manifolds[1];
    for (Eigen::Index f = 0; f < m2.eigenvalues.size(); ++f) {
        if (std::abs(m2.eigenvalues(f)) <= zero) continue;
        double amp = 0.0;
        for (Eigen::Index k = 0; k < t1.rows(); ++k) amp = std::max(amp, std::abs(t2(f, k) * t1(k, 0)));
        r.two_photon.push_back({m2.eigenvalues(f) / 2.0, m2.state_labels[static_cast<std::size_t>(f)], amp > 1e-9});
    }
    return r;
}

void write_text(const DressedReport& r, std::ostream& os) {
    os << "dressed states  g=" << format_number(r.g) << "  omega_c=" << format_number(r.omega_c)
       << "  case=" << to_string(r.rcase) << '\n';
    os << "one-photon peak splitting Gamma_w = " << format_number(r.peak_splitting) << "\n\n";
    for (const auto& m : r.manifolds) {
        os << "manifold n=" << m.n_photons << '\n';
        for (Eigen::Index j = 0; j < m.eigenvalues.size(); ++j) {
            const auto& lbl = m.state_labels[static_cast<std::size_t>(j)];
            os << "  " << (lbl.empty() ? "-" : lbl) << "  " << format_number(m.eigenvalues(j)) << '\n';
        }
        os << '\n';
    }
    auto list = [&os](const char* title, const std::vector<Resonance>& v) {
        os << title << '\n';
        for (const auto& x : v) {
            os << "  " << format_number(x.delta_p) << "  " << (x.state.empty() ? "-" : x.state) << "  "
               << (x.allowed ? "allowed" : "forbidden") << '\n';
        }
        os << '\n';
    };
    list("one-photon resonances, Delta_p = lambda(1)", r.one_photon);
    list("two-photon resonances, Delta_p = lambda(2)/2", r.two_photon);
    os << "energy differences\n"
       << "  dE2ph+ = " << format_number(r.energy.dE2ph_plus) << "  dE2ph- = " << format_number(r.energy.dE2ph_minus)
       << '\n'
       << "  dE3ph+ = " << format_number(r.energy.dE3ph_plus) << "  dE3ph- = " << format_number(r.energy.dE3ph_minus)
       << '\n'
       << "  dE3ph'+ = " << format_number(r.energy.dE3ph_prime_plus)
       << "  dE3ph'- = " << format_number(r.energy.dE3ph_prime_minus) << '\n';
}

void write_json(const DressedReport& r, std::ostream& os) {
    ordered_json doc;
    doc["g"] = rounded(r.g);
    doc["omega_c"] = rounded(r.omega_c);
    doc["case"] = to_string(r.rcase);
    doc["peak_splitting"] = rounded(r.peak_splitting);
    auto ms = ordered_json::array();
    for (const auto& m : r.manifolds) {
        auto states = ordered_json::array();
        for (Eigen::Index j = 0; j < m.eigenvalues.size(); ++j) {
            states.push_back({{"label", m.state_labels[static_cast<std::size_t>(j)]},
                              {"eigenvalue", rounded(m.eigenvalues(j))}});
        }
        ms.push_back({{"n_photons", m.n_photons}, {"states", std::move(states)}});
    }
    doc["manifolds"] = std::move(ms);
    auto res = [](const std::vector<Resonance>& v) {
        auto a = ordered_json::array();
        for (const auto& x : v) a.push_back({{"delta_p", rounded(x.delta_p)}, {"state", x.state}, {"allowed", x.allowed}});
        return a;
    };
    doc["one_photon_resonances"] = res(r.one_photon);
    doc["two_photon_resonances"] = res(r.two_photon);
    doc["energy_differences"] = {{"dE2ph_plus", rounded(r.energy.dE2ph_plus)},
                                 {"dE2ph_minus", rounded(r.energy.dE2ph_minus)},
                                 {"dE3ph_plus", rounded(r.energy.dE3ph_plus)},
                                 {"dE3ph_minus", rounded(r.energy.dE3ph_minus)},
                                 {"dE3ph_prime_plus", rounded(r.energy.dE3ph_prime_plus)},
                                 {"dE3ph_prime_minus", rounded(r.energy.dE3ph_prime_minus)}};
    os << doc.dump(2) << '\n';
}

} // namespace mpb
