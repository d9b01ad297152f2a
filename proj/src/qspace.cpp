#include "mpb/qspace.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

namespace mpb {

char level_char(Level l) noexcept {
    switch (l) {
    case Level::g: return 'g';
    case Level::m: return 'm';
    case Level::e: return 'e';
    }
    return '?';
}

BasisSpec::BasisSpec(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("BasisSpec: n_max must be >= 1");
}

std::size_t BasisSpec::index(Level a1, Level a2, int n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("BasisSpec::index: photon number out of range");
    const int atoms = static_cast<int>(a1) * kAtomLevels + static_cast<int>(a2);
    return static_cast<std::size_t>(atoms * field_dim() + n);
}

BasisLabel BasisSpec::label(std::size_t idx) const {
    if (idx >= dim()) throw std::out_of_range("BasisSpec::label: index out of range");
    const int i = static_cast<int>(idx);
    const int n = i % field_dim();
    const int atoms = i / field_dim();
    return {static_cast<Level>(atoms / kAtomLevels), static_cast<Level>(atoms % kAtomLevels), n};
}

std::string BasisSpec::ket(std::size_t idx) const {
    const auto l = label(idx);
    std::ostringstream os;
    os << '|' << level_char(l.atom1) << level_char(l.atom2) << ',' << l.n << '>';
    return os.str();
}

void require_same_basis(const BasisSpec& a, const BasisSpec& b, const char* what) {
    if (!(a == b)) {
        throw DimensionMismatch(std::string(what) + ": operands live on different bases (n_max " +
                                std::to_string(a.n_max()) + " vs " + std::to_string(b.n_max()) + ")");
    }
}

QOperator::QOperator(BasisSpec basis, Eigen::MatrixXcd m) : basis_(basis), m_(std::move(m)) {
    const auto d = static_cast<Eigen::Index>(basis_.dim());
    if (m_.rows() != d || m_.cols() != d) {
        throw DimensionMismatch("QOperator: matrix is " + std::to_string(m_.rows()) + "x" +
                                std::to_string(m_.cols()) + ", basis needs " + std::to_string(d));
    }
}

QOperator QOperator::zero(const BasisSpec& basis) {
    const auto d = static_cast<Eigen::Index>(basis.dim());
    return {basis, Eigen::MatrixXcd::Zero(d, d)};
}

QOperator QOperator::identity(const BasisSpec& basis) {
    const auto d = static_cast<Eigen::Index>(basis.dim());
    return {basis, Eigen::MatrixXcd::Identity(d, d)};
}

double QOperator::hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

QOperator QOperator::operator+(const QOperator& o) const { return add_scaled(*this, 1.0, o); }
QOperator QOperator::operator-(const QOperator& o) const { return add_scaled(*this, -1.0, o); }
QOperator QOperator::operator*(const QOperator& o) const { return compose(*this, o); }
QOperator QOperator::operator*(cplx s) const { return {basis_, m_ * s}; }

QOperator annihilation(const BasisSpec& basis) {
    const auto d = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int a1 = 0; a1 < 3; ++a1) {
        for (int a2 = 0; a2 < 3; ++a2) {
            for (int n = 1; n <= basis.n_max(); ++n) {
                const auto from = basis.index(Level(a1), Level(a2), n);
                const auto to = basis.index(Level(a1), Level(a2), n - 1);
                m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = std::sqrt(double(n));
            }
        }
    }
    return {basis, std::move(m)};
}

QOperator creation(const BasisSpec& basis) { return dagger(annihilation(basis)); }

QOperator number(const BasisSpec& basis) { return compose(creation(basis), annihilation(basis)); }

QOperator atomic_sigma(const BasisSpec& basis, int atom, Level j, Level k) {
    if (atom != 1 && atom != 2) {
        throw std::invalid_argument("atomic_sigma: atom index must be 1 or 2, got " + std::to_string(atom));
    }
    const auto d = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int other = 0; other < 3; ++other) {
        for (int n = 0; n <= basis.n_max(); ++n) {
            std::size_t to, from;
            if (atom == 1) {
                to = basis.index(j, Level(other), n);
                from = basis.index(k, Level(other), n);
            } else {
                to = basis.index(Level(other), j, n);
                from = basis.index(Level(other), k, n);
            }
            m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
        }
    }
    return {basis, std::move(m)};
}

QOperator tensor(const BasisSpec& basis, const Eigen::MatrixXcd& atom1,
                 const Eigen::MatrixXcd& atom2, const Eigen::MatrixXcd& field) {
    if (atom1.rows() != 3 || atom1.cols() != 3 || atom2.rows() != 3 || atom2.cols() != 3 ||
        field.rows() != basis.field_dim() || field.cols() != basis.field_dim()) {
        throw DimensionMismatch("tensor: factor shapes do not match the basis");
    }
    Eigen::MatrixXcd atoms = Eigen::kroneckerProduct(atom1, atom2);
    Eigen::MatrixXcd full = Eigen::kroneckerProduct(atoms, field);
    return {basis, std::move(full)};
}

QOperator dagger(const QOperator& a) { return {a.basis(), a.matrix().adjoint()}; }

QOperator compose(const QOperator& a, const QOperator& b) {
    require_same_basis(a.basis(), b.basis(), "compose");
    return {a.basis(), a.matrix() * b.matrix()};
}

QOperator add_scaled(const QOperator& a, cplx c, const QOperator& b) {
    require_same_basis(a.basis(), b.basis(), "add_scaled");
    return {a.basis(), a.matrix() + c * b.matrix()};
}

QOperator commutator(const QOperator& a, const QOperator& b) {
    return add_scaled(compose(a, b), -1.0, compose(b, a));
}

cplx expectation(const QOperator& a, const Eigen::MatrixXcd& rho) {
    const auto d = static_cast<Eigen::Index>(a.dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw DimensionMismatch("expectation: density matrix dimension does not match operator");
    }
    // trace(A rho) without forming the product
    return (a.matrix().transpose().cwiseProduct(rho)).sum();
}

Eigen::MatrixXcd basis_projector(const BasisSpec& basis, const BasisLabel& l) {
    const auto d = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
    const auto i = static_cast<Eigen::Index>(basis.index(l));
    p(i, i) = 1.0;
    return p;
}

} // namespace mpb
