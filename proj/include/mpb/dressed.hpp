// dressed.hpp: dressed-state ladder of the undriven system (eta = 0,
// Delta_c = 0) restricted to the one-, two- and three-photon manifolds.
//
// Manifold kets, with symmetric/antisymmetric atom pairs
//   |MG±,k> = (|mg,k> ± |gm,k>)/√2,  |EG±,k> = (|eg,k> ± |ge,k>)/√2,
//   |EM±,k> = (|em,k> ± |me,k>)/√2.
// Row order of the n = 1 matrix: GG,1  MG+,0  MG-,0  EG+,0  EG-,0.
// Row order of the n = 2, 3 matrices:
//   GG,n  MG+,n-1  MG-,n-1  EG+,n-1  EG-,n-1  EM+,n-2  EM-,n-2  MM,n-2  EE,n-2
// (|m> and |e> each carry one pump excitation; the control field is classical.)

#pragma once

#include "mpb/qspace.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpb {

class UnsupportedCase : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class DegenerateLimit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class RadiationCase {
    in_phase,   // phi_z = 0,  g1 = g2
    out_phase,  // phi_z = pi, g1 = -g2
};

const char* to_string(RadiationCase c) noexcept;
RadiationCase radiation_case_from_string(const std::string& s);   // "in"/"in_phase"/"out"/"out_phase"
// Throws UnsupportedCase unless phi_z is 0 or pi (mod 2 pi) within 1e-12.
RadiationCase radiation_case(double phi_z);

struct ManifoldHamiltonian {
    int n_photons = 1;
    Eigen::MatrixXd matrix;
    std::vector<std::string> basis_labels;
    double g_plus = 0.0;
    double g_minus = 0.0;
    double omega_c = 0.0;
};

int manifold_dim(int n_photons);
std::vector<std::string> manifold_labels(int n_photons);

ManifoldHamiltonian manifold_hamiltonian(int n_photons, double g_plus, double g_minus, double omega_c);

// Columns are the manifold kets embedded in the composite space.
// n_photons = 0 gives the single column |gg,0>. Requires n_max >= n_photons.
Eigen::MatrixXd manifold_embedding(const BasisSpec& basis, int n_photons);

struct AuxConstants {
    double alpha;      // 7g² + 5Ω²
    double beta;       // 25g⁴ + 6g²Ω² + 9Ω⁴
    double gamma_aux;  // -5g² + 3Ω²
    double X;          // 12g² + 5Ω²
    double Y;          // 64g⁴ + 24g²Ω² + 9Ω⁴
    double Z;          // -8g² + 3Ω²
};

AuxConstants aux_constants(double g, double omega_c);

struct DressedSpectrum {
    int n_photons = 0;
    Eigen::VectorXd eigenvalues;               // ascending
    Eigen::MatrixXd eigenvectors;              // columns, manifold basis
    std::vector<std::string> state_labels;     // per column; empty string when unmatched
    std::optional<Eigen::VectorXd> analytic_eigenvalues;   // ascending
    std::optional<AuxConstants> aux;
};

// Numeric diagonalisation, any g±. n_photons = 0 is the ground state |GG,0>.
DressedSpectrum numeric_spectrum(int n_photons, double g_plus, double g_minus, double omega_c);

// Closed-form eigenvalues, sorted ascending, for n = 1, 2, 3.
Eigen::VectorXd closed_form_eigenvalues(int n_photons, double g, double omega_c);

// Numeric diagonalisation at g± of the given case plus the closed forms and
// constants. Columns are labelled by maximal overlap with the printed closed-form
// eigenstates when those exist and are valid (Ω_c > 0, g > 0).
DressedSpectrum analytic_spectrum(RadiationCase c, int n_photons, double g, double omega_c);

struct AnalyticEigenstate {
    std::string label;        // e.g. "Psi(2)_3+"
    double eigenvalue;
    Eigen::VectorXd vector;   // normalised, manifold basis
    double residual;          // ||H v - lambda v||
};

// Eigenstates exactly as printed in the closed-form derivation, normalised.
// Three-photon states exist only for out_phase. Throws DegenerateLimit when
// g = 0 or Ω_c = 0.
std::vector<AnalyticEigenstate> analytic_eigenstates(RadiationCase c, int n_photons, double g, double omega_c);

// <Ψ_to| Σ_i (σ^i_mg + σ^i_gm) |Ψ_from> per unit pump amplitude;
// rows index `to` eigenvectors, columns `from`. Manifolds must be adjacent.
Eigen::MatrixXd transition_strengths(const DressedSpectrum& from, const DressedSpectrum& to);

struct EnergyDifferences {
    double dE2ph_plus, dE2ph_minus;
    double dE3ph_plus, dE3ph_minus;
    double dE3ph_prime_plus, dE3ph_prime_minus;
};

EnergyDifferences energy_differences(RadiationCase c, double g, double omega_c);

// Splitting of the two one-photon peaks, 2√(2g² + Ω²).
double peak_splitting(double g, double omega_c);

// Named closed-form eigenvalues of the ladder (the + branch; - is the negative).
struct LadderEigenvalues {
    double l1_1, l1_2;           // ±Ω, ±√(2g²+Ω²)
    double l2_1, l2_2, l2_3;     // ±√(g²+Ω²), ±√((α∓√β)/2)
    double l3_1, l3_2, l3_3;     // ±√(2g²+Ω²), ±√((X∓√Y)/2)
};
LadderEigenvalues ladder_eigenvalues(double g, double omega_c);

} // namespace mpb
