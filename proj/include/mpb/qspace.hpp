// qspace.hpp: basis and dense operator algebra for two three-level atoms
// coupled to one truncated cavity mode.
//
// Tensor ordering is fixed: atom1 ⊗ atom2 ⊗ field, with the field index
// running fastest. A composite index is
//     index = (level1 * 3 + level2) * (n_max + 1) + n.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpb {

using cplx = std::complex<double>;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Level : int { g = 0, m = 1, e = 2 };

char level_char(Level l) noexcept;

struct BasisLabel {
    Level atom1;
    Level atom2;
    int n;
    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

class BasisSpec {
public:
    static constexpr int kAtomLevels = 3;

    explicit BasisSpec(int n_max);

    int n_max() const noexcept { return n_max_; }
    int field_dim() const noexcept { return n_max_ + 1; }
    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(kAtomLevels * kAtomLevels * field_dim());
    }

    std::size_t index(Level a1, Level a2, int n) const;
    std::size_t index(const BasisLabel& l) const { return index(l.atom1, l.atom2, l.n); }
    BasisLabel label(std::size_t idx) const;
    // "|mg,2>" style ket name
    std::string ket(std::size_t idx) const;

    friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

private:
    int n_max_;
};

// Dense complex operator on the composite space. Immutable once built.
class QOperator {
public:
    QOperator(BasisSpec basis, Eigen::MatrixXcd m);

    static QOperator zero(const BasisSpec& basis);
    static QOperator identity(const BasisSpec& basis);

    const BasisSpec& basis() const noexcept { return basis_; }
    std::size_t dim() const noexcept { return basis_.dim(); }
    const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    // max |A - A†|
    double hermiticity_error() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() < tol; }

    QOperator operator+(const QOperator& o) const;
    QOperator operator-(const QOperator& o) const;
    QOperator operator*(const QOperator& o) const;
    QOperator operator*(cplx s) const;
    friend QOperator operator*(cplx s, const QOperator& a) { return a * s; }

private:
    BasisSpec basis_;
    Eigen::MatrixXcd m_;
};

void require_same_basis(const BasisSpec& a, const BasisSpec& b, const char* what);

// Field operators (identity on both atoms).
QOperator annihilation(const BasisSpec& basis);
QOperator creation(const BasisSpec& basis);
QOperator number(const BasisSpec& basis);

// |j><k| on the given atom (1 or 2), identity elsewhere.
QOperator atomic_sigma(const BasisSpec& basis, int atom, Level j, Level k);

// Embeds single-factor matrices (3x3, 3x3, (n_max+1)x(n_max+1)) into the
// composite space by an explicit Kronecker product.
QOperator tensor(const BasisSpec& basis, const Eigen::MatrixXcd& atom1,
                 const Eigen::MatrixXcd& atom2, const Eigen::MatrixXcd& field);

QOperator dagger(const QOperator& a);
QOperator compose(const QOperator& a, const QOperator& b);
QOperator add_scaled(const QOperator& a, cplx c, const QOperator& b);
QOperator commutator(const QOperator& a, const QOperator& b);

// trace(A rho); rho given as a plain matrix on the same basis.
cplx expectation(const QOperator& a, const Eigen::MatrixXcd& rho);

// Projector |psi><psi| for a basis ket.
Eigen::MatrixXcd basis_projector(const BasisSpec& basis, const BasisLabel& l);

} // namespace mpb
