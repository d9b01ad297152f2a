// config.hpp: run configuration and figure presets, read from JSON.
//
// A config is a JSON object; every key is optional and unknown keys are
// rejected. See README.md for an annotated example.

#pragma once

#include "mpb/model.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpb {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& field, std::size_t line, const std::string& what);
    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }   // 0 when unknown

private:
    std::string field_;
    std::size_t line_;
};

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SweepVariable { delta_p, omega_c };
enum class OutputFormat { csv, json };
// Steady-state spectra, or the closed-form energy differences over omega_c.
enum class RunKind { spectrum, energy_differences };

const char* to_string(SweepVariable v) noexcept;
const char* to_string(OutputFormat f) noexcept;
OutputFormat output_format_from_string(const std::string& s);

struct SweepSpec {
    SweepVariable variable = SweepVariable::delta_p;
    double start = -60.0;
    double stop = 60.0;
    std::size_t points = 801;

    std::vector<double> grid() const;   // evenly spaced, endpoints included
};

// Parameter overrides applied on top of RunConfig::params for one curve.
struct Series {
    std::optional<double> omega_c;
    std::optional<double> phi_z;
    std::optional<double> eta;
    std::optional<double> g;
    std::optional<int> n_max;

    SystemParams apply(const SystemParams& base) const;
    std::string label() const;   // "omega_c=20", or "base" without overrides
};

struct OutputSpec {
    std::string path;
    OutputFormat format = OutputFormat::csv;
};

struct RunConfig {
    SystemParams params;
    bool n_max_explicit = false;   // otherwise chosen from eta
    SweepSpec sweep;
    std::vector<Series> series{Series{}};
    std::optional<std::string> preset;
    RunKind kind = RunKind::spectrum;
    OutputSpec output;
    unsigned workers = 1;

    // Throws ValidationError.
    void validate() const;
    // Full parameter set of every series, with the Fock cutoff resolved.
    std::vector<SystemParams> series_params() const;
};

// Default Fock cutoff for a pump strength: 6 for eta <= 0.5, else 8.
int default_n_max(double eta);

const std::vector<std::string>& preset_names();
// Throws ValidationError for an unknown name.
RunConfig preset_config(const std::string& name);

// Parses and validates. Throws ParseError or ValidationError.
RunConfig load_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Worker count from MPB_WORKERS, if set and valid.
std::optional<unsigned> workers_from_env();

} // namespace mpb
