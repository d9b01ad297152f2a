// model.hpp: system parameters, the Hamiltonian and its decay channels.
//
// All rates and frequencies are in units of the cavity decay rate kappa.
// Hamiltonian (hbar = 1, frame rotating at the pump/control frequencies):
//
//   H = De (s1_ee + s2_ee) + Dm (s1_mm + s2_mm) + Dp a†a
//     + sum_i g_i (a si_mg + a† si_gm)
//     + eta sum_i (si_mg + si_gm) + Omega_c sum_i (si_me + si_em)
//
// with Dm = Dp and De = Dp + Dc. Atom 1 sits at a field antinode (g1 = g),
// atom 2 at relative phase phi_z (g2 = g cos phi_z).

#pragma once

#include "mpb/qspace.hpp"

#include <string>
#include <vector>

namespace mpb {

// How a decay rate r maps onto the prefactor p of p(2 C rho C† - C†C rho - rho C†C).
enum class DecayConvention {
    // p = r / 2: the channel depletes C†C at rate r (the usual Lindblad
    // normalisation). Reproduces the published steady-state values.
    standard,
    // p = r: the rate multiplies the "2 C rho C†" form directly.
    literal,
};

const char* to_string(DecayConvention c) noexcept;
DecayConvention decay_convention_from_string(const std::string& s);

struct SystemParams {
    double g = 20.0;
    double phi_z = 0.0;      // radians
    double eta = 0.2;
    double omega_c = 0.0;
    double delta_p = 0.0;
    double delta_c = 0.0;
    double kappa = 1.0;      // unit of all rates; must stay 1
    double gamma_m = 1.0;
    double gamma_e = 0.01;
    int n_max = 6;
    DecayConvention decay = DecayConvention::standard;

    // Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

struct Couplings {
    double g1;
    double g2;
    double g_plus;
    double g_minus;
};

Couplings couplings(const SystemParams& p);

QOperator build_hamiltonian(const SystemParams& p);

struct CollapseChannel {
    std::string name;
    QOperator op;
    double rate;     // prefactor p of p(2 C rho C† - C†C rho - rho C†C)
};

struct CollapseSet {
    BasisSpec basis;
    std::vector<CollapseChannel> channels;
};

// Cavity channel (a) always present; atomic channels si_gm (gamma_m) and
// si_me (gamma_e) only when their rate is nonzero.
CollapseSet build_collapse_set(const SystemParams& p);

// sum_k p_k (2 C rho C† - C†C rho - rho C†C), evaluated densely.
Eigen::MatrixXcd apply_dissipator(const CollapseSet& set, const Eigen::MatrixXcd& rho);

// a†a + sum_i (si_mm + e_weight * si_ee). With e_weight = 1 this is the
// pump-excitation number conserved by H when eta = 0.
QOperator excitation_number(const BasisSpec& basis, double e_weight = 1.0);

} // namespace mpb
