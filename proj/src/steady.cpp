#include "mpb/steady.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/UmfPackSupport>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace mpb {

namespace {

SparseMatrixC to_sparse(const Eigen::MatrixXcd& m) {
    return m.sparseView(cplx(0.0), 0.0);
}

SparseMatrixC sparse_identity(Eigen::Index d) {
    SparseMatrixC id(d, d);
    id.setIdentity();
    return id;
}

// Copy of A with row `row` replaced by the functional `coef`.
SparseMatrixC with_row(const SparseMatrixC& l, Eigen::Index row, const std::vector<std::pair<Eigen::Index, cplx>>& coef) {
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(l.nonZeros()) + coef.size());
    for (Eigen::Index col = 0; col < l.outerSize(); ++col) {
        for (SparseMatrixC::InnerIterator it(l, col); it; ++it) {
            if (it.row() != row) trip.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (const auto& [col, v] : coef) trip.emplace_back(row, col, v);
    SparseMatrixC a(l.rows(), l.cols());
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();
    return a;
}

// L with row `row` replaced by the trace functional sum_i rho(i,i).
SparseMatrixC with_trace_row(const SparseMatrixC& l, Eigen::Index dim, Eigen::Index row) {
    std::vector<std::pair<Eigen::Index, cplx>> coef;
    for (Eigen::Index i = 0; i < dim; ++i) coef.emplace_back(i * dim + i, cplx(1.0));
    return with_row(l, row, coef);
}

bool same_pattern(const SparseMatrixC& a, const SparseMatrixC& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.nonZeros() != b.nonZeros()) return false;
    const auto n_outer = a.outerSize() + 1;
    return std::equal(a.outerIndexPtr(), a.outerIndexPtr() + n_outer, b.outerIndexPtr()) &&
           std::equal(a.innerIndexPtr(), a.innerIndexPtr() + a.nonZeros(), b.innerIndexPtr());
}

Eigen::Index diagonal_row(Eigen::Index dim, Eigen::Index i) { return i * dim + i; }

} // namespace

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
    if (v.size() != dim * dim) throw DimensionMismatch("unvectorize: length is not dim^2");
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

LiouvilleProblem build_liouvillian(const QOperator& h, const CollapseSet& c) {
    require_same_basis(h.basis(), c.basis, "build_liouvillian");
    const auto d = static_cast<Eigen::Index>(h.dim());
    const SparseMatrixC id = sparse_identity(d);
    const SparseMatrixC hs = to_sparse(h.matrix());
    const SparseMatrixC ht = to_sparse(h.matrix().transpose());

    const cplx minus_i(0.0, -1.0);
    SparseMatrixC l = minus_i * (SparseMatrixC(Eigen::kroneckerProduct(id, hs)) -
                                 SparseMatrixC(Eigen::kroneckerProduct(ht, id)));

    double scale = h.matrix().cwiseAbs().maxCoeff();
    for (const auto& ch : c.channels) {
        if (ch.rate < 0.0) throw std::invalid_argument("build_liouvillian: negative channel rate");
        if (ch.rate == 0.0) continue;
        require_same_basis(ch.op.basis(), c.basis, "build_liouvillian");
        const Eigen::MatrixXcd& cm = ch.op.matrix();
        const Eigen::MatrixXcd cdc = cm.adjoint() * cm;
        const SparseMatrixC jump = Eigen::kroneckerProduct(to_sparse(cm.conjugate()), to_sparse(cm));
        const SparseMatrixC left = Eigen::kroneckerProduct(id, to_sparse(cdc));
        const SparseMatrixC right = Eigen::kroneckerProduct(to_sparse(cdc.transpose()), id);
        l += cplx(ch.rate) * (2.0 * jump - left - right);
        scale = std::max(scale, ch.rate);
    }
    l.prune(cplx(0.0), 0.0);
    l.makeCompressed();
    return {std::move(l), h.basis(), 0, scale, std::nullopt};
}

std::optional<StateSymmetry> exchange_symmetry(const SystemParams& p) {
    const auto c = couplings(p);
    const double tol = 1e-14 * std::max(std::abs(c.g1), 1.0);
    const bool even = std::abs(c.g2 - c.g1) <= tol;
    if (!even && std::abs(c.g2 + c.g1) > tol) return std::nullopt;
    const BasisSpec b(p.n_max);
    StateSymmetry s;
    s.perm.resize(b.dim());
    s.sign.resize(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto l = b.label(i);
        s.perm[i] = b.index(l.atom2, l.atom1, l.n);
        s.sign[i] = (!even && l.n % 2 == 1) ? -1.0 : 1.0;
    }
    return s;
}

LiouvilleProblem build_liouvillian(const SystemParams& p) {
    auto problem = build_liouvillian(build_hamiltonian(p), build_collapse_set(p));
    problem.symmetry = exchange_symmetry(p);
    return problem;
}

Eigen::MatrixXcd apply_liouvillian(const LiouvilleProblem& problem, const Eigen::MatrixXcd& rho) {
    const auto d = static_cast<Eigen::Index>(problem.basis.dim());
    if (rho.rows() != d || rho.cols() != d) throw DimensionMismatch("apply_liouvillian: bad rho dimension");
    const Eigen::VectorXcd out = problem.superop * vectorize(rho);
    return unvectorize(out, d);
}

// ---------------------------------------------------------------------------

namespace {

// Sparse LU through UMFPACK with METIS ordering. The symbolic analysis is kept
// while successive matrices share a pattern.
class ConstrainedLu {
public:
    ConstrainedLu() { lu_.umfpackControl()(UMFPACK_ORDERING) = UMFPACK_ORDERING_METIS; }

    Eigen::VectorXcd solve(const SparseMatrixC& a, Eigen::Index row, std::size_t dense_below) {
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(a.rows());
        rhs(row) = 1.0;

        if (static_cast<std::size_t>(a.rows()) < dense_below) {
            Eigen::FullPivLU<Eigen::MatrixXcd> dlu{Eigen::MatrixXcd(a)};
            if (!dlu.isInvertible()) {
                throw SingularSolve("steady state: constrained Liouvillian is singular (rank " +
                                    std::to_string(dlu.rank()) + " of " + std::to_string(a.rows()) + ")");
            }
            return dlu.solve(rhs);
        }

        // The analysis sees only the pattern, so results do not depend on
        // which matrix happened to be factored first. METIS draws from a
        // process-wide random state, hence the lock.
        if (!analyzed_ || !same_pattern(a, pattern_)) {
            pattern_ = a;
            std::fill(pattern_.valuePtr(), pattern_.valuePtr() + pattern_.nonZeros(), cplx(1.0));
            static std::mutex analysis_mutex;
            const std::lock_guard<std::mutex> lock(analysis_mutex);
            lu_.analyzePattern(pattern_);
            if (lu_.info() != Eigen::Success) throw SingularSolve("steady state: symbolic analysis failed");
            analyzed_ = true;
        }
        // UMFPACK keeps a pointer to the matrix, so it has to outlive the factors
        factored_ = a;
        lu_.factorize(factored_);
        if (lu_.info() != Eigen::Success) {
            analyzed_ = false;
            throw SingularSolve("steady state: sparse LU factorisation failed (UMFPACK status " +
                                std::to_string(lu_.umfpackFactorizeReturncode()) + ")");
        }
        Eigen::VectorXcd x = lu_.solve(rhs);
        if (lu_.info() != Eigen::Success) throw SingularSolve("steady state: sparse LU solve failed");
        return x;
    }

private:
    Eigen::UmfPackLU<SparseMatrixC> lu_;
    SparseMatrixC pattern_;
    SparseMatrixC factored_;
    bool analyzed_ = false;
};

// Orthonormal basis of the subspace of vec(rho) left invariant by
// rho -> P rho P^T for a signed permutation P.
struct SymmetricSubspace {
    StateSymmetry key;
    SparseMatrixC q;        // D^2 x k, real entries
    SparseMatrixC qt;
    std::vector<Eigen::Index> column_of;   // full index -> column, -1 if projected out
};

SymmetricSubspace symmetric_subspace(const StateSymmetry& sym) {
    const auto d = static_cast<Eigen::Index>(sym.perm.size());
    SymmetricSubspace s;
    s.key = sym;
    s.column_of.assign(static_cast<std::size_t>(d * d), -1);
    std::vector<Eigen::Triplet<cplx>> trip;
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const Eigen::Index k = j * d + i;
            if (s.column_of[static_cast<std::size_t>(k)] != -1) continue;
            const auto pi = static_cast<Eigen::Index>(sym.perm[static_cast<std::size_t>(i)]);
            const auto pj = static_cast<Eigen::Index>(sym.perm[static_cast<std::size_t>(j)]);
            const Eigen::Index k2 = pj * d + pi;
            const double sign = sym.sign[static_cast<std::size_t>(i)] * sym.sign[static_cast<std::size_t>(j)];
            if (k2 == k) {
                if (sign < 0.0) continue;   // odd element, zero in any invariant state
                trip.emplace_back(k, col, 1.0);
            } else {
                trip.emplace_back(k, col, std::numbers::sqrt2 / 2.0);
                trip.emplace_back(k2, col, sign * std::numbers::sqrt2 / 2.0);
                s.column_of[static_cast<std::size_t>(k2)] = col;
            }
            s.column_of[static_cast<std::size_t>(k)] = col;
            ++col;
        }
    }
    s.q.resize(d * d, col);
    s.q.setFromTriplets(trip.begin(), trip.end());
    s.q.makeCompressed();
    s.qt = s.q.transpose();
    return s;
}

bool same_symmetry(const StateSymmetry& a, const StateSymmetry& b) {
    return a.perm == b.perm && a.sign == b.sign;
}

Eigen::MatrixXcd hermitize_normalize(const Eigen::VectorXcd& x, Eigen::Index d) {
    Eigen::MatrixXcd rho = unvectorize(x, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!(std::abs(tr) > 0.0) || !std::isfinite(tr)) {
        throw NullSpaceDegenerate("steady state: solution has zero or non-finite trace");
    }
    return rho / tr;
}

} // namespace

struct SteadyStateSolver::Impl {
    ConstrainedLu lu;
    std::optional<SymmetricSubspace> subspace;

    const SymmetricSubspace& subspace_for(const StateSymmetry& sym) {
        if (!subspace || !same_symmetry(subspace->key, sym)) subspace = symmetric_subspace(sym);
        return *subspace;
    }
};

SteadyStateSolver::SteadyStateSolver(SteadyStateOptions opt)
    : opt_(opt), impl_(std::make_unique<Impl>()) {}
SteadyStateSolver::~SteadyStateSolver() = default;
SteadyStateSolver::SteadyStateSolver(SteadyStateSolver&&) noexcept = default;
SteadyStateSolver& SteadyStateSolver::operator=(SteadyStateSolver&&) noexcept = default;

SteadyState SteadyStateSolver::solve(const LiouvilleProblem& problem) {
    const auto d = static_cast<Eigen::Index>(problem.basis.dim());
    if (problem.superop.rows() != d * d || problem.superop.cols() != d * d) {
        throw DimensionMismatch("solve_steady_state: superoperator does not match basis");
    }
    const auto row = static_cast<Eigen::Index>(problem.trace_row);
    if (row < 0 || row >= d * d) throw std::invalid_argument("solve_steady_state: trace_row out of range");

    Eigen::VectorXcd x;
    const SymmetricSubspace* sub = nullptr;
    if (opt_.use_symmetry && problem.symmetry) {
        if (problem.symmetry->perm.size() != static_cast<std::size_t>(d) ||
            problem.symmetry->sign.size() != static_cast<std::size_t>(d)) {
            throw DimensionMismatch("solve_steady_state: symmetry does not match basis");
        }
        sub = &impl_->subspace_for(*problem.symmetry);
        if (sub->column_of[static_cast<std::size_t>(row)] < 0) sub = nullptr;
    }
    if (sub) {
        const SparseMatrixC lr = sub->qt * problem.superop * sub->q;
        std::vector<std::pair<Eigen::Index, cplx>> coef;
        for (Eigen::Index i = 0; i < d; ++i) {
            const Eigen::Index c = sub->column_of[static_cast<std::size_t>(i * d + i)];
            if (c >= 0) coef.emplace_back(c, sub->qt.coeff(c, i * d + i));
        }
        const Eigen::Index rr = sub->column_of[static_cast<std::size_t>(row)];
        x = sub->q * impl_->lu.solve(with_row(lr, rr, coef), rr, opt_.dense_below);
    } else {
        x = impl_->lu.solve(with_trace_row(problem.superop, d, row), row, opt_.dense_below);
    }
    if (!x.allFinite()) throw SingularSolve("steady state: solution is not finite");

    SteadyState out;
    out.rho = hermitize_normalize(x, d);

    // always checked against the full generator, so a wrong symmetry cannot pass
    const double lnorm = problem.superop.norm();
    out.residual = (problem.superop * vectorize(out.rho)).norm();
    if (out.residual > opt_.residual_tol * std::max(lnorm, 1.0)) {
        std::ostringstream os;
        os << "steady state: residual " << out.residual << " exceeds " << opt_.residual_tol
           << " * ||L|| (" << lnorm << "); steady state is not unique";
        throw NullSpaceDegenerate(os.str());
    }

    if (opt_.check_uniqueness) {
        const Eigen::Index alt = diagonal_row(d, d - 1);
        if (alt != row) {
            ConstrainedLu lu2;
            Eigen::MatrixXcd rho2;
            try {
                rho2 = hermitize_normalize(lu2.solve(with_trace_row(problem.superop, d, alt), alt, opt_.dense_below), d);
            } catch (const SingularSolve&) {
                throw NullSpaceDegenerate("steady state: alternate constraint row is singular; second zero mode");
            }
            const double dist = trace_distance(out.rho, rho2);
            if (!(dist < 1e-6)) {
                throw NullSpaceDegenerate("steady state: solutions from two constraint rows differ by trace distance " +
                                          std::to_string(dist));
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.rho);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    if (out.min_eigenvalue < -opt_.clip_tol) {
        std::ostringstream os;
        os << "steady state: eigenvalue " << out.min_eigenvalue << " below -" << opt_.clip_tol;
        throw NotPositive(os.str());
    }
    if (out.min_eigenvalue < 0.0) {
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        ev /= ev.sum();
        out.rho = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
        out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();
    }
    return out;
}

SteadyState solve_steady_state(const LiouvilleProblem& problem, const SteadyStateOptions& opt) {
    SteadyStateSolver solver(opt);
    return solver.solve(problem);
}

// ---------------------------------------------------------------------------

double max_oracle_step(const QOperator& h, const CollapseSet& c) {
    double scale = h.matrix().cwiseAbs().maxCoeff();
    for (const auto& ch : c.channels) scale = std::max(scale, ch.rate);
    return scale > 0.0 ? 0.01 / scale : std::numeric_limits<double>::infinity();
}

namespace {

using RowSparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct Rk4State {
    RowSparse l;   // row-major is several times faster for the matvec
    Eigen::VectorXcd v, k1, k2, k3, k4, tmp;
    double trace0;
    Eigen::Index d;
};

void rk4_step(Rk4State& s, double h, EvolveResult& log) {
    s.k1.noalias() = s.l * s.v;
    s.tmp = s.v + (0.5 * h) * s.k1;
    s.k2.noalias() = s.l * s.tmp;
    s.tmp = s.v + (0.5 * h) * s.k2;
    s.k3.noalias() = s.l * s.tmp;
    s.tmp = s.v + h * s.k3;
    s.k4.noalias() = s.l * s.tmp;
    s.v += (h / 6.0) * (s.k1 + 2.0 * s.k2 + 2.0 * s.k3 + s.k4);

    Eigen::Map<Eigen::MatrixXcd> rho(s.v.data(), s.d, s.d);
    const cplx tr = rho.trace();
    const double drift = std::abs(tr - s.trace0);
    if (!(drift <= 1e-6)) {
        std::ostringstream os;
        os << "evolve_oracle: trace drifted by " << drift << " at t=" << log.t + h;
        throw StepUnstable(os.str());
    }
    double herm = 0.0;
    for (Eigen::Index j = 0; j < s.d; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            const cplx a = rho(i, j), b = std::conj(rho(j, i));
            herm = std::max(herm, std::abs(a - b));
            rho(i, j) = 0.5 * (a + b);
            rho(j, i) = std::conj(rho(i, j));
        }
    }
    log.max_hermiticity_error = std::max(log.max_hermiticity_error, herm);
    log.max_trace_drift = std::max(log.max_trace_drift, drift);
    s.v *= s.trace0 / rho.trace().real();
    log.t += h;
    ++log.steps;
}

Rk4State start_state(const LiouvilleProblem& problem, const Eigen::MatrixXcd& rho0, double dt) {
    const auto d = static_cast<Eigen::Index>(problem.basis.dim());
    if (rho0.rows() != d || rho0.cols() != d) throw DimensionMismatch("evolve_oracle: bad rho0 dimension");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_oracle: dt must be positive");
    if (problem.rate_scale > 0.0 && dt > 0.01 / problem.rate_scale * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "evolve_oracle: dt=" << dt << " exceeds the stability bound " << 0.01 / problem.rate_scale;
        throw std::invalid_argument(os.str());
    }
    Rk4State s;
    s.l = problem.superop;
    s.v = vectorize(rho0);
    s.trace0 = rho0.trace().real();
    s.d = d;
    return s;
}

} // namespace

EvolveResult evolve_oracle(const LiouvilleProblem& problem, const Eigen::MatrixXcd& rho0, double t_final,
                           double dt) {
    if (t_final < 0.0) throw std::invalid_argument("evolve_oracle: t_final must be >= 0");
    auto s = start_state(problem, rho0, dt);
    EvolveResult log;
    const auto n = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
    const double h = n > 0 ? t_final / static_cast<double>(n) : 0.0;
    for (std::size_t i = 0; i < n; ++i) rk4_step(s, h, log);
    log.rho = unvectorize(s.v, s.d);
    log.final_derivative_norm = (s.l * s.v).norm();
    return log;
}

EvolveResult evolve_until_stationary(const LiouvilleProblem& problem, const Eigen::MatrixXcd& rho0, double dt,
                                     double tol, double t_max) {
    auto s = start_state(problem, rho0, dt);
    EvolveResult log;
    // checking the derivative every step would double the cost
    constexpr std::size_t kCheckEvery = 64;
    for (;;) {
        if (log.steps % kCheckEvery == 0) {
            log.final_derivative_norm = (s.l * s.v).norm();
            if (log.final_derivative_norm < tol || log.t >= t_max) break;
        }
        rk4_step(s, dt, log);
    }
    log.rho = unvectorize(s.v, s.d);
    return log;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("trace_distance: shape mismatch");
    const Eigen::MatrixXcd diff = a - b;
    const Eigen::MatrixXcd herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------

double Observables::require_g2() const {
    if (!g2) throw UndefinedCorrelation("g2(0) undefined: mean photon number below floor");
    return *g2;
}

double Observables::require_g3() const {
    if (!g3) throw UndefinedCorrelation("g3(0) undefined: mean photon number below floor");
    return *g3;
}

Observables observables(const Eigen::MatrixXcd& rho, const BasisSpec& basis, double floor) {
    const auto d = static_cast<Eigen::Index>(basis.dim());
    if (rho.rows() != d || rho.cols() != d) throw DimensionMismatch("observables: bad rho dimension");
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-8) {
        throw std::invalid_argument("observables: density matrix must have unit trace (got " +
                                    std::to_string(tr) + ")");
    }

    Observables o;
    o.photon_distribution.assign(static_cast<std::size_t>(basis.field_dim()), 0.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto n = basis.label(static_cast<std::size_t>(i)).n;
        o.photon_distribution[static_cast<std::size_t>(n)] += rho(i, i).real();
    }
    // a†^k a^k is diagonal in the Fock basis with entries n(n-1)...(n-k+1)
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (std::size_t n = 0; n < o.photon_distribution.size(); ++n) {
        auto& p = o.photon_distribution[n];
        p = std::max(p, 0.0);
        const double x = static_cast<double>(n);
        m1 += x * p;
        m2 += x * (x - 1.0) * p;
        m3 += x * (x - 1.0) * (x - 2.0) * p;
    }
    o.mean_n = m1;
    o.top_fock_pop = std::clamp(o.photon_distribution.back(), 0.0, 1.0);
    o.purity = rho.cwiseAbs2().sum();
    if (m1 >= floor) {
        o.g2 = m2 / (m1 * m1);
        o.g3 = m3 / (m1 * m1 * m1);
    }
    return o;
}

// ---------------------------------------------------------------------------

SweepPointError::SweepPointError(std::size_t index, double delta_p, const std::string& what)
    : std::runtime_error(what), index_(index), delta_p_(delta_p) {}

std::vector<Observables> solve_points(const std::vector<SystemParams>& points, const SweepOptions& opt) {
    std::vector<Observables> out(points.size());
    std::vector<std::string> errors(points.size());
    std::vector<char> failed(points.size(), 0);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        SteadyStateSolver solver(opt.solver);
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                const auto problem = build_liouvillian(points[i]);
                const auto ss = solver.solve(problem);
                out[i] = observables(ss.rho, problem.basis, opt.floor);
            } catch (const std::exception& e) {
                failed[i] = 1;
                errors[i] = e.what();
            }
        }
    };

    const unsigned n_workers =
        static_cast<unsigned>(std::clamp<std::size_t>(opt.workers, 1, std::max<std::size_t>(points.size(), 1)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < points.size(); ++i) {
        if (failed[i]) {
            std::ostringstream os;
            os << "point " << i << " (delta_p=" << points[i].delta_p << ", omega_c=" << points[i].omega_c
               << "): " << errors[i];
            throw SweepPointError(i, points[i].delta_p, os.str());
        }
    }
    return out;
}

std::vector<SweepPoint> sweep(const SystemParams& params, const std::vector<double>& delta_p_grid,
                              const SweepOptions& opt) {
    if (delta_p_grid.empty()) throw std::invalid_argument("sweep: grid must be nonempty");
    std::vector<SystemParams> pts(delta_p_grid.size(), params);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].delta_p = delta_p_grid[i];
    auto obs = solve_points(pts, opt);
    std::vector<SweepPoint> out;
    out.reserve(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) out.push_back({delta_p_grid[i], std::move(obs[i])});
    return out;
}

} // namespace mpb
