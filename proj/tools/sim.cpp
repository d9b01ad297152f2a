// sim: steady-state spectra and dressed-state tables for two cascade atoms
// in a driven cavity.
//
//   sim sweep --config run.json [--out file] [--format csv|json]
//   sim preset fig4a --out fig4a.csv [--format csv|json] [--points N] [--n-max N]
//   sim dressed --g 20 --omega-c 20 --case out [--format text|json]
//
// MPB_WORKERS sets the number of worker threads for sweeps.

#include "mpb/config.hpp"
#include "mpb/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

int run_config(mpb::RunConfig cfg) {
    if (auto w = mpb::workers_from_env()) cfg.workers = *w;
    try {
        cfg.validate();
        if (cfg.output.path.empty()) throw mpb::IoError("no output path given");
        const auto result = mpb::execute(cfg);
        mpb::write_output(result, cfg.output);
        std::size_t rows = result.energy.size();
        for (const auto& s : result.series) rows += s.rows.size();
        std::cerr << "wrote " << rows << " rows to " << cfg.output.path << '\n';
    } catch (const mpb::ValidationError& e) {
        std::cerr << "sim: invalid configuration: " << e.what() << '\n';
        return kUsageError;
    } catch (const mpb::SweepPointError& e) {
        std::cerr << "sim: solver failed at " << e.what() << '\n';
        return kRuntimeFailure;
    } catch (const std::exception& e) {
        std::cerr << "sim: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiphoton blockade with two cascade atoms in a driven cavity"};
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON config");
    sweep->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_path, "output file (overrides output.path)");
    sweep->add_option("--format", format, "csv or json (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string preset_name;
    std::size_t points = 0;
    int n_max = 0;
    auto* preset = app.add_subcommand("preset", "run one of the figure presets");
    preset->add_option("name", preset_name, "preset name")->required()->check(CLI::IsMember(mpb::preset_names()));
    preset->add_option("--out", out_path, "output file")->required();
    preset->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    preset->add_option("--points", points, "grid points")->check(CLI::PositiveNumber);
    preset->add_option("--n-max", n_max, "Fock cutoff")->check(CLI::Range(1, 64));

    double g = 0.0, omega_c = 0.0;
    std::string rcase, report_format = "text";
    auto* dressed = app.add_subcommand("dressed", "dressed-state eigenvalues and resonances");
    dressed->add_option("--g", g, "atom-cavity coupling")->required()->check(CLI::NonNegativeNumber);
    dressed->add_option("--omega-c", omega_c, "control field Rabi frequency")
        ->required()
        ->check(CLI::NonNegativeNumber);
    dressed->add_option("--case", rcase, "in or out (phi_z = 0 or pi)")
        ->required()
        ->check(CLI::IsMember({"in", "out"}));
    dressed->add_option("--format", report_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    if (sweep->parsed()) {
        mpb::RunConfig cfg;
        try {
            cfg = mpb::load_config_file(config_path);
        } catch (const mpb::ParseError& e) {
            std::cerr << "sim: " << config_path << ": " << e.what() << '\n';
            return kUsageError;
        } catch (const std::exception& e) {
            std::cerr << "sim: " << config_path << ": " << e.what() << '\n';
            return kUsageError;
        }
        if (!out_path.empty()) cfg.output.path = out_path;
        if (!format.empty()) cfg.output.format = mpb::output_format_from_string(format);
        return run_config(cfg);
    }

    if (preset->parsed()) {
        auto cfg = mpb::preset_config(preset_name);
        cfg.output.path = out_path;
        if (!format.empty()) cfg.output.format = mpb::output_format_from_string(format);
        if (points > 0) cfg.sweep.points = points;
        if (n_max > 0) {
            cfg.params.n_max = n_max;
            cfg.n_max_explicit = true;
        }
        return run_config(cfg);
    }

    try {
        const auto r = mpb::dressed_report(g, omega_c, mpb::radiation_case_from_string(rcase));
        if (report_format == "json") mpb::write_json(r, std::cout);
        else mpb::write_text(r, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "sim: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return 0;
}
