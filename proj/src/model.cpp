#include "mpb/model.hpp"

#include <cmath>
#include <stdexcept>

namespace mpb {

const char* to_string(DecayConvention c) noexcept {
    return c == DecayConvention::standard ? "standard" : "literal";
}

DecayConvention decay_convention_from_string(const std::string& s) {
    if (s == "standard") return DecayConvention::standard;
    if (s == "literal") return DecayConvention::literal;
    throw std::invalid_argument("unknown decay convention '" + s + "' (expected standard|literal)");
}

void SystemParams::validate() const {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    need(kappa == 1.0, "kappa must be 1 (it is the unit of all rates)");
    need(g >= 0.0, "g must be >= 0");
    need(eta >= 0.0, "eta must be >= 0");
    need(omega_c >= 0.0, "omega_c must be >= 0");
    need(gamma_m >= 0.0, "gamma_m must be >= 0");
    need(gamma_e >= 0.0, "gamma_e must be >= 0");
    need(n_max >= 1, "n_max must be >= 1");
    need(std::isfinite(phi_z) && std::isfinite(delta_p) && std::isfinite(delta_c) &&
             std::isfinite(g) && std::isfinite(eta) && std::isfinite(omega_c),
         "parameters must be finite");
}

Couplings couplings(const SystemParams& p) {
    const double g1 = p.g;
    const double g2 = p.g * std::cos(p.phi_z);
    return {g1, g2, g1 + g2, g1 - g2};
}

QOperator build_hamiltonian(const SystemParams& p) {
    p.validate();
    const BasisSpec basis(p.n_max);
    const auto c = couplings(p);
    const auto a = annihilation(basis);
    const auto ad = creation(basis);

    const double delta_m = p.delta_p;
    const double delta_e = p.delta_p + p.delta_c;

    Eigen::MatrixXcd h = p.delta_p * number(basis).matrix();
    const double gi[2] = {c.g1, c.g2};
    for (int i = 1; i <= 2; ++i) {
        const auto s_mg = atomic_sigma(basis, i, Level::m, Level::g);
        const auto s_gm = atomic_sigma(basis, i, Level::g, Level::m);
        const auto s_me = atomic_sigma(basis, i, Level::m, Level::e);
        const auto s_em = atomic_sigma(basis, i, Level::e, Level::m);
        h += delta_e * atomic_sigma(basis, i, Level::e, Level::e).matrix();
        h += delta_m * atomic_sigma(basis, i, Level::m, Level::m).matrix();
        h += gi[i - 1] * (a.matrix() * s_mg.matrix() + ad.matrix() * s_gm.matrix());
        h += p.eta * (s_mg.matrix() + s_gm.matrix());
        h += p.omega_c * (s_me.matrix() + s_em.matrix());
    }
    return {basis, std::move(h)};
}

CollapseSet build_collapse_set(const SystemParams& p) {
    p.validate();
    const BasisSpec basis(p.n_max);
    const double scale = p.decay == DecayConvention::standard ? 0.5 : 1.0;

    CollapseSet set{basis, {}};
    set.channels.push_back({"cavity", annihilation(basis), scale * p.kappa});
    for (int i = 1; i <= 2; ++i) {
        if (p.gamma_m > 0.0) {
            set.channels.push_back({"atom" + std::to_string(i) + "_m->g",
                                    atomic_sigma(basis, i, Level::g, Level::m), scale * p.gamma_m});
        }
    }
    for (int i = 1; i <= 2; ++i) {
        if (p.gamma_e > 0.0) {
            set.channels.push_back({"atom" + std::to_string(i) + "_e->m",
                                    atomic_sigma(basis, i, Level::m, Level::e), scale * p.gamma_e});
        }
    }
    return set;
}

Eigen::MatrixXcd apply_dissipator(const CollapseSet& set, const Eigen::MatrixXcd& rho) {
    const auto d = static_cast<Eigen::Index>(set.basis.dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw DimensionMismatch("apply_dissipator: density matrix dimension does not match basis");
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& ch : set.channels) {
        const auto& c = ch.op.matrix();
        const Eigen::MatrixXcd cd = c.adjoint();
        const Eigen::MatrixXcd cdc = cd * c;
        out += ch.rate * (2.0 * c * rho * cd - cdc * rho - rho * cdc);
    }
    return out;
}

QOperator excitation_number(const BasisSpec& basis, double e_weight) {
    Eigen::MatrixXcd n = number(basis).matrix();
    for (int i = 1; i <= 2; ++i) {
        n += atomic_sigma(basis, i, Level::m, Level::m).matrix();
        n += e_weight * atomic_sigma(basis, i, Level::e, Level::e).matrix();
    }
    return {basis, std::move(n)};
}

} // namespace mpb
