// report.hpp: executing a RunConfig and writing its results; dressed-state
// summaries for the command line.

#pragma once

#include "mpb/config.hpp"
#include "mpb/dressed.hpp"
#include "mpb/steady.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace mpb {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// top_fock_pop above this raises the truncation flag
inline constexpr double kTruncationWarning = 1e-6;

struct ResultRow {
    double sweep_value;
    Observables obs;
    std::vector<std::string> flags;   // "undefined_correlation", "truncation_warning"
};

struct SeriesResult {
    std::string label;
    SystemParams params;
    std::vector<ResultRow> rows;
};

struct EnergyRow {
    double omega_c;
    EnergyDifferences d;
};

struct RunResult {
    RunConfig config;
    std::vector<SeriesResult> series;   // RunKind::spectrum
    std::vector<EnergyRow> energy;      // RunKind::energy_differences
};

// Runs every series of the config. Per-point solver failures propagate as
// SweepPointError.
RunResult execute(const RunConfig& cfg);

void write_csv(const RunResult& r, std::ostream& os);
void write_json(const RunResult& r, std::ostream& os);
// Throws IoError when the path is empty or cannot be written.
void write_output(const RunResult& r, const OutputSpec& out);

// Formats with 10 significant digits; "nan" for missing values.
std::string format_number(double x);

struct Resonance {
    double delta_p;
    std::string state;    // label of the dressed state reached
    bool allowed;         // nonzero pump amplitude from the ground state
};

struct DressedReport {
    double g;
    double omega_c;
    RadiationCase rcase;
    double peak_splitting;
    std::vector<DressedSpectrum> manifolds;   // n = 1, 2, 3
    std::vector<Resonance> one_photon;        // Delta_p = lambda(1)
    std::vector<Resonance> two_photon;        // Delta_p = lambda(2) / 2
    EnergyDifferences energy;
};

DressedReport dressed_report(double g, double omega_c, RadiationCase c);
void write_text(const DressedReport& r, std::ostream& os);
void write_json(const DressedReport& r, std::ostream& os);

} // namespace mpb
