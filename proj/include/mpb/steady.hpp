// steady.hpp: the Liouvillian and its steady state, with an RK4 oracle
// and the photon statistics used by detuning sweeps.
//
// Vectorisation is column stacking: vec(rho)[j * D + i] = rho(i, j), so that
// vec(A rho B) = (B^T ⊗ A) vec(rho).

#pragma once

#include "mpb/model.hpp"

#include <Eigen/Sparse>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mpb {

using SparseMatrixC = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;

class SteadyStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
// Residual too large or a second zero mode: the steady state is not unique.
class NullSpaceDegenerate : public SteadyStateError {
public:
    using SteadyStateError::SteadyStateError;
};
class SingularSolve : public SteadyStateError {
public:
    using SteadyStateError::SteadyStateError;
};
// Negative eigenvalue beyond the roundoff clip threshold.
class NotPositive : public SteadyStateError {
public:
    using SteadyStateError::SteadyStateError;
};
class StepUnstable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class UndefinedCorrelation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

// Signed permutation of basis states, |i> -> sign[i] |perm[i]>, that commutes
// with H and maps the collapse set onto itself. The steady state is invariant
// under it, which lets the solver work on the symmetric subspace only.
struct StateSymmetry {
    std::vector<std::size_t> perm;
    std::vector<double> sign;
};

// Atom exchange, combined with photon parity when g2 = -g1. Empty when the
// couplings are not equal in magnitude.
std::optional<StateSymmetry> exchange_symmetry(const SystemParams& p);

struct LiouvilleProblem {
    SparseMatrixC superop;       // D^2 x D^2 generator, trace row NOT yet replaced
    BasisSpec basis;
    std::size_t trace_row = 0;   // row replaced by the trace constraint in the solve
    double rate_scale = 0.0;     // max(|H_ij|, channel rates); bounds the RK4 step
    std::optional<StateSymmetry> symmetry;
};

LiouvilleProblem build_liouvillian(const QOperator& h, const CollapseSet& c);
LiouvilleProblem build_liouvillian(const SystemParams& p);

Eigen::MatrixXcd apply_liouvillian(const LiouvilleProblem& problem, const Eigen::MatrixXcd& rho);

struct SteadyStateOptions {
    double residual_tol = 1e-10;     // relative to the Frobenius norm of the superoperator
    double clip_tol = 1e-9;          // negative eigenvalues above -clip_tol are roundoff
    std::size_t dense_below = 400;   // dense LU when the system is smaller than this
    bool use_symmetry = true;        // solve on the invariant subspace when one is known
    // Re-solve with a different constraint row and compare (doubles the cost).
    bool check_uniqueness = false;
};

struct SteadyState {
    Eigen::MatrixXcd rho;
    double residual = 0.0;           // ||L vec(rho)||_2 before clipping
    double min_eigenvalue = 0.0;     // before clipping
};

SteadyState solve_steady_state(const LiouvilleProblem& problem, const SteadyStateOptions& opt = {});

// Reusable solver: keeps the symbolic factorisation while the sparsity
// pattern of successive problems stays the same (sweeps over one parameter).
class SteadyStateSolver {
public:
    explicit SteadyStateSolver(SteadyStateOptions opt = {});
    ~SteadyStateSolver();
    SteadyStateSolver(SteadyStateSolver&&) noexcept;
    SteadyStateSolver& operator=(SteadyStateSolver&&) noexcept;

    SteadyState solve(const LiouvilleProblem& problem);

private:
    struct Impl;
    SteadyStateOptions opt_;
    std::unique_ptr<Impl> impl_;
};

struct EvolveResult {
    Eigen::MatrixXcd rho;
    double t = 0.0;
    std::size_t steps = 0;
    double max_trace_drift = 0.0;         // per step, before renormalisation
    double max_hermiticity_error = 0.0;   // per step, before symmetrisation
    double final_derivative_norm = 0.0;   // ||L rho|| at the end
};

// Fixed-step RK4 integration of d rho/dt = L rho up to t_final.
// Requires dt <= 0.01 / max(|H|, rates); throws StepUnstable when the trace
// drifts by more than 1e-6 in a step.
EvolveResult evolve_oracle(const LiouvilleProblem& problem, const Eigen::MatrixXcd& rho0,
                           double t_final, double dt);

// Integrates until ||L rho||_2 < tol or t_max is reached.
EvolveResult evolve_until_stationary(const LiouvilleProblem& problem, const Eigen::MatrixXcd& rho0,
                                     double dt, double tol, double t_max);

// Largest stable step accepted by the oracle for this problem.
double max_oracle_step(const QOperator& h, const CollapseSet& c);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

struct Observables {
    double mean_n = 0.0;
    std::optional<double> g2;        // empty when mean_n < floor
    std::optional<double> g3;
    double top_fock_pop = 0.0;
    double purity = 0.0;
    std::vector<double> photon_distribution;   // P(n), n = 0..n_max

    bool correlations_defined() const noexcept { return g2.has_value(); }
    double require_g2() const;
    double require_g3() const;
};

inline constexpr double kDefaultCorrelationFloor = 1e-8;

Observables observables(const Eigen::MatrixXcd& rho, const BasisSpec& basis,
                        double floor = kDefaultCorrelationFloor);

struct SweepPoint {
    double delta_p;
    Observables obs;
};

class SweepPointError : public std::runtime_error {
public:
    SweepPointError(std::size_t index, double delta_p, const std::string& what);
    std::size_t index() const noexcept { return index_; }
    double delta_p() const noexcept { return delta_p_; }

private:
    std::size_t index_;
    double delta_p_;
};

struct SweepOptions {
    unsigned workers = 1;
    double floor = kDefaultCorrelationFloor;
    SteadyStateOptions solver{};
};

// One steady-state solve per grid value of delta_p (overriding params.delta_p).
// Output order matches the grid regardless of worker count.
std::vector<SweepPoint> sweep(const SystemParams& params, const std::vector<double>& delta_p_grid,
                              const SweepOptions& opt = {});

// Generic form: one solve per full parameter set, results in input order.
std::vector<Observables> solve_points(const std::vector<SystemParams>& points,
                                      const SweepOptions& opt = {});

} // namespace mpb
