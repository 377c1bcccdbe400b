#pragma once

/**
 * @file solver.hpp
 * @brief Discretized free-boundary equation for the optimal stopping boundary.
 *
 * The boundary satisfies beta(t) = z - int_t^1 K(t, beta(t), u, beta(u)) du with
 * beta(1) = z. On a mesh 0 = t_0 < ... < t_N = 1 the integral becomes the right
 * Riemann sum over j = i .. N-2; the last addend is dropped because the kernel
 * is undefined at u = 1.
 *
 * Two solvers share that discretization:
 *  - picard_solve updates the whole boundary from the previous iterate,
 *    starting at beta == z, until the sup-norm change is below eps;
 *  - backward_solve fixes beta_{N-1}, ..., beta_0 one node at a time.
 */

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "oubstop/ou_bridge.hpp"

namespace oubstop {

enum class MeshKind { logarithmic, uniform };

struct TimeGrid {
    std::vector<double> nodes;  ///< 0 = t_0 < ... < t_N = 1

    /// N, the number of intervals.
    std::size_t intervals() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// t_i = ln(1 + i (e - 1) / N); t_N is set to exactly 1.
TimeGrid log_partition(std::size_t n);
TimeGrid uniform_partition(std::size_t n);
TimeGrid make_grid(std::size_t n, MeshKind kind);

struct SolverConfig {
    std::size_t n = 500;
    double eps = 1e-4;
    std::size_t max_iter = 500;
    MeshKind mesh = MeshKind::logarithmic;
    unsigned workers = 0;  ///< 0 resolves through resolve_workers()

    void validate() const;
};

enum class SolveMethod { picard, backward };

const char* to_string(SolveMethod m) noexcept;

struct BoundarySolution {
    TimeGrid grid;
    std::vector<double> beta;       ///< aligned with grid.nodes; beta.back() == z
    std::size_t iterations = 0;     ///< Picard sweeps (backward: total scalar iterations)
    double final_residual = 0.0;    ///< sup-norm change of the last sweep
    std::vector<double> residuals;  ///< Picard residual history
    SolveMethod method = SolveMethod::picard;
};

/// Picard iteration hit max_iter. Carries the last iterate.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, BoundarySolution last)
        : std::runtime_error(what), last_(std::move(last)) {}

    const BoundarySolution& last_iterate() const noexcept { return last_; }

private:
    BoundarySolution last_;
};

/// Backward induction could not solve the scalar equation at one node.
class ScalarSolveError : public std::runtime_error {
public:
    ScalarSolveError(const std::string& what, std::size_t node) : std::runtime_error(what), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Requires canonical params (theta = 0, T = 1).
BoundarySolution picard_solve(const OUBParams& params, const SolverConfig& cfg);

/// Requires canonical params. Each scalar equation is solved by fixed-point
/// iteration (damped by 0.5 after 20 plain steps) with bisection on
/// [z - 10 gamma, z + 10 gamma] as fallback.
BoundarySolution backward_solve(const OUBParams& params, const SolverConfig& cfg);

/// Piecewise-linear interpolation of the boundary; exact at nodes.
/// Throws std::domain_error outside [0, 1].
double boundary_eval(const BoundarySolution& sol, double t);

/// Boundary for general parameters, solved once in canonical coordinates.
struct GeneralBoundary {
    CanonicalReduction reduction;
    BoundarySolution canonical;

    /// beta(t) for t in [0, T].
    double operator()(double t) const;
    /// Mesh nodes in original time.
    std::vector<double> times() const;
    /// Boundary values at the nodes in original space.
    std::vector<double> values() const;
};

GeneralBoundary solve_boundary(const OUBParams& params, const SolverConfig& cfg,
                               SolveMethod method = SolveMethod::picard);

}  // namespace oubstop
