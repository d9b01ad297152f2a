#include "mpb/dressed.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace mpb {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kSqrt6 = std::sqrt(6.0);

// manifold row indices for n >= 2 (n = 1 uses the first five)
enum Row : int { GG = 0, MGp, MGm, EGp, EGm, EMp, EMm, MM, EE };

void check_n(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("manifold index must be 1, 2 or 3, got " + std::to_string(n));
}

std::string pm(int s) { return s > 0 ? "+" : "-"; }

} // namespace

const char* to_string(RadiationCase c) noexcept {
    return c == RadiationCase::in_phase ? "in_phase" : "out_phase";
}

RadiationCase radiation_case_from_string(const std::string& s) {
    if (s == "in" || s == "in_phase") return RadiationCase::in_phase;
    if (s == "out" || s == "out_phase") return RadiationCase::out_phase;
    throw UnsupportedCase("unknown radiation case '" + s + "' (expected in|out)");
}

RadiationCase radiation_case(double phi_z) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi_z, two_pi);
    if (r < 0) r += two_pi;
    if (r < 1e-12 || two_pi - r < 1e-12) return RadiationCase::in_phase;
    if (std::abs(r - std::numbers::pi) < 1e-12) return RadiationCase::out_phase;
    throw UnsupportedCase("closed forms exist only for phi_z = 0 or pi (got " + std::to_string(phi_z) + ")");
}

int manifold_dim(int n_photons) {
    if (n_photons == 0) return 1;
    check_n(n_photons);
    return n_photons == 1 ? 5 : 9;
}

std::vector<std::string> manifold_labels(int n) {
    if (n == 0) return {"|GG,0>"};
    check_n(n);
    const auto k = [](int x) { return std::to_string(x); };
    std::vector<std::string> out = {"|GG," + k(n) + ">",     "|MG+," + k(n - 1) + ">", "|MG-," + k(n - 1) + ">",
                                    "|EG+," + k(n - 1) + ">", "|EG-," + k(n - 1) + ">"};
    if (n >= 2) {
        for (const char* s : {"|EM+,", "|EM-,", "|MM,", "|EE,"}) out.push_back(s + k(n - 2) + ">");
    }
    return out;
}

ManifoldHamiltonian manifold_hamiltonian(int n, double gp, double gm, double oc) {
    check_n(n);
    ManifoldHamiltonian out;
    out.n_photons = n;
    out.g_plus = gp;
    out.g_minus = gm;
    out.omega_c = oc;
    out.basis_labels = manifold_labels(n);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(manifold_dim(n), manifold_dim(n));
    auto set = [&h](int r, int c, double v) { h(r, c) = v; h(c, r) = v; };
    if (n == 1) {
        set(GG, MGp, gp / kSqrt2);
        set(GG, MGm, gm / kSqrt2);
        set(MGp, EGp, oc);
        set(MGm, EGm, oc);
    } else {
        // photon-number factors: √n on the GG row, √(n-1) on the rest
        const double top = n == 2 ? 1.0 : kSqrt6 / 2.0;
        const double mid = n == 2 ? 1.0 / kSqrt2 : 1.0;
        const double low = n == 2 ? 0.5 : kSqrt2 / 2.0;
        set(GG, MGp, top * gp);
        set(GG, MGm, top * gm);
        set(MGp, EGp, oc);
        set(MGp, MM, mid * gp);
        set(MGm, EGm, oc);
        set(MGm, MM, -mid * gm);
        set(EGp, EMp, low * gp);
        set(EGp, EMm, -low * gm);
        set(EGm, EMp, -low * gm);
        set(EGm, EMm, low * gp);
        set(EMp, MM, kSqrt2 * oc);
        set(EMp, EE, kSqrt2 * oc);
    }
    out.matrix = std::move(h);
    return out;
}

Eigen::MatrixXd manifold_embedding(const BasisSpec& basis, int n) {
    if (n > basis.n_max()) throw std::invalid_argument("manifold_embedding: n_max too small for manifold");
    const auto d = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, manifold_dim(n));
    auto put = [&](int col, Level a1, Level a2, int photons, double v) {
        e(static_cast<Eigen::Index>(basis.index(a1, a2, photons)), col) += v;
    };
    auto pair = [&](int col, Level x, Level y, int photons, int sign) {
        put(col, x, y, photons, 1.0 / kSqrt2);
        put(col, y, x, photons, sign / kSqrt2);
    };
    using L = Level;
    put(GG, L::g, L::g, n, 1.0);
    if (n == 0) return e;
    pair(MGp, L::m, L::g, n - 1, +1);
    pair(MGm, L::m, L::g, n - 1, -1);
    pair(EGp, L::e, L::g, n - 1, +1);
    pair(EGm, L::e, L::g, n - 1, -1);
    if (n >= 2) {
        pair(EMp, L::e, L::m, n - 2, +1);
        pair(EMm, L::e, L::m, n - 2, -1);
        put(MM, L::m, L::m, n - 2, 1.0);
        put(EE, L::e, L::e, n - 2, 1.0);
    }
    return e;
}

AuxConstants aux_constants(double g, double o) {
    const double g2 = g * g, o2 = o * o;
    return {7 * g2 + 5 * o2,
            25 * g2 * g2 + 6 * g2 * o2 + 9 * o2 * o2,
            -5 * g2 + 3 * o2,
            12 * g2 + 5 * o2,
            64 * g2 * g2 + 24 * g2 * o2 + 9 * o2 * o2,
            -8 * g2 + 3 * o2};
}

LadderEigenvalues ladder_eigenvalues(double g, double o) {
    const auto a = aux_constants(g, o);
    const double sb = std::sqrt(a.beta), sy = std::sqrt(a.Y);
    // α ≥ √β and X ≥ √Y analytically; clamp roundoff
    const auto root = [](double x) { return std::sqrt(std::max(x, 0.0)); };
    LadderEigenvalues l;
    l.l1_1 = o;
    l.l1_2 = std::sqrt(2 * g * g + o * o);
    l.l2_1 = std::sqrt(g * g + o * o);
    l.l2_2 = root((a.alpha - sb) / 2.0);
    l.l2_3 = root((a.alpha + sb) / 2.0);
    l.l3_1 = std::sqrt(2 * g * g + o * o);
    l.l3_2 = root((a.X - sy) / 2.0);
    l.l3_3 = root((a.X + sy) / 2.0);
    return l;
}

namespace {

struct LabelledValue {
    std::string label;
    double value;
};

std::vector<LabelledValue> closed_form_labelled(int n, double g, double o) {
    check_n(n);
    const auto l = ladder_eigenvalues(g, o);
    const std::string p = "Psi(" + std::to_string(n) + ")_";
    std::vector<LabelledValue> v;
    if (n == 1) {
        v = {{p + "0", 0.0}};
        for (int s : {+1, -1}) {
            v.push_back({p + "1" + pm(s), s * l.l1_1});
            v.push_back({p + "2" + pm(s), s * l.l1_2});
        }
        return v;
    }
    v = {{p + "0+", 0.0}, {p + "0-", 0.0}, {p + "0", 0.0}};
    const double e1 = n == 2 ? l.l2_1 : l.l3_1;
    const double e2 = n == 2 ? l.l2_2 : l.l3_2;
    const double e3 = n == 2 ? l.l2_3 : l.l3_3;
    for (int s : {+1, -1}) {
        v.push_back({p + "1" + pm(s), s * e1});
        v.push_back({p + "2" + pm(s), s * e2});
        v.push_back({p + "3" + pm(s), s * e3});
    }
    return v;
}

} // namespace

Eigen::VectorXd closed_form_eigenvalues(int n, double g, double o) {
    const auto lv = closed_form_labelled(n, g, o);
    Eigen::VectorXd v(static_cast<Eigen::Index>(lv.size()));
    for (std::size_t i = 0; i < lv.size(); ++i) v(static_cast<Eigen::Index>(i)) = lv[i].value;
    std::sort(v.data(), v.data() + v.size());
    return v;
}

DressedSpectrum numeric_spectrum(int n, double gp, double gm, double oc) {
    DressedSpectrum s;
    s.n_photons = n;
    if (n == 0) {
        s.eigenvalues = Eigen::VectorXd::Zero(1);
        s.eigenvectors = Eigen::MatrixXd::Identity(1, 1);
        s.state_labels = {"Psi(0)"};
        return s;
    }
    const auto h = manifold_hamiltonian(n, gp, gm, oc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix);
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    s.state_labels.assign(static_cast<std::size_t>(s.eigenvalues.size()), "");
    return s;
}

namespace {

std::pair<double, double> case_couplings(RadiationCase c, double g) {
    return c == RadiationCase::in_phase ? std::pair{2 * g, 0.0} : std::pair{0.0, 2 * g};
}

Eigen::VectorXd make_vec(int dim, std::initializer_list<std::pair<int, double>> entries) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (const auto& [i, x] : entries) v(i) = x;
    return v;
}

} // namespace

std::vector<AnalyticEigenstate> analytic_eigenstates(RadiationCase c, int n, double g, double o) {
    check_n(n);
    if (g == 0.0 || o == 0.0) {
        throw DegenerateLimit("printed eigenstates are singular at g = 0 or omega_c = 0; use numeric eigenvectors");
    }
    if (n == 3 && c == RadiationCase::in_phase) {
        throw UnsupportedCase("three-photon eigenstates are only given for the out-of-phase case");
    }
    const auto a = aux_constants(g, o);
    const auto l = ladder_eigenvalues(g, o);
    const double sb = std::sqrt(a.beta), sy = std::sqrt(a.Y), ga = a.gamma_aux;
    const double g2 = g * g, o2 = o * o;
    const int dim = manifold_dim(n);
    const std::string p = "Psi(" + std::to_string(n) + ")_";
    const bool in = c == RadiationCase::in_phase;

    std::vector<AnalyticEigenstate> out;
    auto add = [&](std::string label, double lambda, Eigen::VectorXd v) {
        out.push_back({std::move(label), lambda, std::move(v), 0.0});
    };

    if (n == 1) {
        const int mg_bright = in ? MGp : MGm;   // state coupled to |GG,1>
        const int eg_bright = in ? EGp : EGm;
        const int mg_dark = in ? MGm : MGp;
        const int eg_dark = in ? EGm : EGp;
        add(p + "0", 0.0, make_vec(dim, {{GG, -o / (kSqrt2 * g)}, {eg_bright, 1.0}}));
        for (int s : {+1, -1}) {
            add(p + "1" + pm(s), s * l.l1_1, make_vec(dim, {{mg_dark, double(s)}, {eg_dark, 1.0}}));
            add(p + "2" + pm(s), s * l.l1_2,
                make_vec(dim, {{GG, kSqrt2 * g / o}, {mg_bright, s * l.l1_2 / o}, {eg_bright, 1.0}}));
        }
    } else if (n == 2 && in) {
        const double r2 = std::sqrt(a.alpha - sb), r3 = std::sqrt(a.alpha + sb);
        add(p + "0+", 0.0, make_vec(dim, {{GG, o2 / (kSqrt2 * g2)}, {EGp, -kSqrt2 * o / g}, {EE, 1.0}}));
        add(p + "0-", 0.0, make_vec(dim, {{GG, (o2 - g2) / (kSqrt2 * g2)}, {EGp, -kSqrt2 * o / g}, {MM, 1.0}}));
        add(p + "0", 0.0, make_vec(dim, {{MGm, -g / o}, {EMm, 1.0}}));
        for (int s : {+1, -1}) {
            add(p + "1" + pm(s), s * l.l2_1,
                make_vec(dim, {{MGm, o / g}, {EGm, s * std::sqrt(g2 + o2) / g}, {EMm, 1.0}}));
            add(p + "2" + pm(s), s * l.l2_2,
                make_vec(dim, {{GG, s * (ga + sb) / (3 * kSqrt2 * o2)},
                               {MGp, -s * r2 * (ga + sb) / (12 * g * o2)},
                               {EGp, -((ga - 6 * g2) + sb) / (6 * kSqrt2 * g * o)},
                               {EMp, s * r2 / (2 * o)},
                               {MM, (-ga + 6 * o2 - sb) / (6 * o2)},
                               {EE, 1.0}}));
            add(p + "3" + pm(s), s * l.l2_3,
                make_vec(dim, {{GG, (-ga + sb) / (3 * kSqrt2 * o2)},
                               {MGp, s * r3 * (-ga + sb) / (12 * g * o2)},
                               {EGp, ((-ga + 6 * g2) + sb) / (6 * kSqrt2 * g * o)},
                               {EMp, s * r3 / (2 * o)},
                               {MM, (-ga + 6 * o2 + sb) / (6 * o2)},
                               {EE, 1.0}}));
        }
    } else if (n == 2) {
        const double r2 = std::sqrt(a.alpha - sb), r3 = std::sqrt(a.alpha + sb);
        add(p + "0+", 0.0, make_vec(dim, {{GG, -o2 / (kSqrt2 * g)}, {EGm, kSqrt2 * o / g}, {EE, 1.0}}));
        add(p + "0-", 0.0, make_vec(dim, {{GG, (g2 - o2) / (kSqrt2 * g)}, {EGm, kSqrt2 * o / g}, {MM, 1.0}}));
        add(p + "0", 0.0, make_vec(dim, {{MGp, g / o}, {EMm, 1.0}}));
        for (int s : {+1, -1}) {
            add(p + "1" + pm(s), s * l.l2_1,
                make_vec(dim, {{MGp, -o / g}, {EGp, -s * (g2 + o2) / g}, {EMm, 1.0}}));
            add(p + "2" + pm(s), s * l.l2_2,
                make_vec(dim, {{GG, (ga + std::sqrt(a.alpha)) / (3 * kSqrt2 * o2)},
                               {MGm, s * r2 * (ga + sb) / (12 * g * o2)},
                               {EGm, (ga - 6 * g2 + sb) / (6 * kSqrt2 * g * o)},
                               {EMp, s * r2 / (2 * o)},
                               {MM, (-ga + 6 * o2 - sb) / (6 * o2)},
                               {EE, 1.0}}));
            add(p + "3" + pm(s), s * l.l2_3,
                make_vec(dim, {{GG, -(-ga + sb) / (3 * kSqrt2 * o2)},
                               {MGm, -s * r3 * (-ga + sb) / (12 * g * o2)},
                               {EGm, -(-ga + 6 * g2 + sb) / (6 * kSqrt2 * g * o)},
                               {EMp, s * r3 / (2 * o)},
                               {MM, (-ga + 6 * o2 + sb) / (6 * o2)},
                               {EE, 1.0}}));
        }
    } else {
        const double r2 = std::sqrt(a.X - sy), r3 = std::sqrt(a.X + sy), z = a.Z;
        add(p + "0+", 0.0, make_vec(dim, {{GG, -o2 / (kSqrt6 * g2)}, {EGm, o / g}, {EE, 1.0}}));
        add(p + "0-", 0.0, make_vec(dim, {{GG, (2 * g2 - o2) / (kSqrt6 * g2)}, {EGm, o / g}, {MM, 1.0}}));
        add(p + "0", 0.0, make_vec(dim, {{MGp, kSqrt2 * g / o}, {EMm, 1.0}}));
        for (int s : {+1, -1}) {
            add(p + "1" + pm(s), s * l.l3_1,
                make_vec(dim, {{MGp, o / (kSqrt2 * g)}, {EGp, s * l.l3_1 / (kSqrt2 * g)}, {EMm, -1.0}}));
            add(p + "2" + pm(s), s * l.l3_2,
                make_vec(dim, {{GG, s * (z + sy) / (2 * kSqrt6 * o2)},
                               {MGm, s * r2 * (z + sy) / (12 * kSqrt2 * g * o2)},
                               {EGm, ((z - 12 * g2) + sy) / (12 * g * o)},
                               {EMp, s * r2 / (2 * o)},
                               {MM, (-z + 6 * o2 - sy) / (6 * o2)},
                               {EE, 1.0}}));
            add(p + "3" + pm(s), s * l.l3_3,
                make_vec(dim, {{GG, (z - sy) / (2 * kSqrt6 * o2)},
                               {MGm, s * r3 * (z - sy) / (12 * kSqrt2 * g * o2)},
                               {EGm, ((z - 12 * g2) - sy) / (12 * g * o)},
                               {EMp, s * r3 / (2 * o)},
                               {MM, (-z + 6 * o2 + sy) / (6 * o2)},
                               {EE, 1.0}}));
        }
    }

    const auto [gp, gm] = case_couplings(c, g);
    const auto h = manifold_hamiltonian(n, gp, gm, o).matrix;
    for (auto& st : out) {
        st.vector.normalize();
        st.residual = (h * st.vector - st.eigenvalue * st.vector).norm();
    }
    return out;
}

DressedSpectrum analytic_spectrum(RadiationCase c, int n, double g, double o) {
    check_n(n);
    if (g < 0.0 || o < 0.0) throw std::invalid_argument("analytic_spectrum: g and omega_c must be >= 0");
    const auto [gp, gm] = case_couplings(c, g);
    DressedSpectrum s = numeric_spectrum(n, gp, gm, o);
    s.analytic_eigenvalues = closed_form_eigenvalues(n, g, o);
    s.aux = aux_constants(g, o);

    // Label numeric columns: restrict to the closed-form eigenvalue cluster,
    // then pick by maximal overlap with the printed eigenstates if available.
    const auto labelled = closed_form_labelled(n, g, o);
    std::vector<AnalyticEigenstate> states;
    try {
        states = analytic_eigenstates(c, n, g, o);
    } catch (const std::exception&) {
        states.clear();
    }
    const double tol = 1e-8 * std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
    std::vector<bool> used(static_cast<std::size_t>(s.eigenvalues.size()), false);
    for (std::size_t k = 0; k < labelled.size(); ++k) {
        int best = -1;
        double best_overlap = -1.0;
        for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
            if (used[static_cast<std::size_t>(j)] || std::abs(s.eigenvalues(j) - labelled[k].value) > tol) continue;
            const double ov = states.empty() ? 0.0 : std::abs(states[k].vector.dot(s.eigenvectors.col(j)));
            if (ov > best_overlap) {
                best_overlap = ov;
                best = static_cast<int>(j);
            }
        }
        if (best >= 0) {
            used[static_cast<std::size_t>(best)] = true;
            s.state_labels[static_cast<std::size_t>(best)] = labelled[k].label;
        }
    }
    return s;
}

Eigen::MatrixXd transition_strengths(const DressedSpectrum& from, const DressedSpectrum& to) {
    if (std::abs(from.n_photons - to.n_photons) != 1) {
        throw std::invalid_argument("transition_strengths: manifolds " + std::to_string(from.n_photons) + " and " +
                                    std::to_string(to.n_photons) + " are not adjacent");
    }
    const BasisSpec basis(std::max({from.n_photons, to.n_photons, 1}));
    Eigen::MatrixXd pump = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(basis.dim()),
                                                 static_cast<Eigen::Index>(basis.dim()));
    for (int i = 1; i <= 2; ++i) {
        pump += atomic_sigma(basis, i, Level::m, Level::g).matrix().real();
        pump += atomic_sigma(basis, i, Level::g, Level::m).matrix().real();
    }
    const Eigen::MatrixXd vf = manifold_embedding(basis, from.n_photons) * from.eigenvectors;
    const Eigen::MatrixXd vt = manifold_embedding(basis, to.n_photons) * to.eigenvectors;
    return vt.transpose() * pump * vf;
}

EnergyDifferences energy_differences(RadiationCase /*c*/, double g, double o) {
    // The ladder eigenvalues coincide for both cases.
    const auto l = ladder_eigenvalues(g, o);
    EnergyDifferences d;
    d.dE2ph_plus = l.l2_3 - 2.0 * l.l1_2;
    d.dE2ph_minus = -d.dE2ph_plus;
    d.dE3ph_plus = l.l3_3 - 1.5 * l.l2_3;
    d.dE3ph_minus = -d.dE3ph_plus;
    d.dE3ph_prime_plus = l.l3_2 - 1.5 * l.l2_2;
    d.dE3ph_prime_minus = -d.dE3ph_prime_plus;
    return d;
}

double peak_splitting(double g, double o) { return 2.0 * std::sqrt(2.0 * g * g + o * o); }

} // namespace mpb
