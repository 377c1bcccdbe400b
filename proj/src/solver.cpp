#include "oubstop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kernel_math.hpp"
#include "oubstop/parallel.hpp"

namespace oubstop {

TimeGrid log_partition(std::size_t n) {
    if (n < 2) throw std::invalid_argument("log_partition: n must be >= 2");
    TimeGrid grid;
    grid.nodes.resize(n + 1);
    const double step = (std::numbers::e - 1.0) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) grid.nodes[i] = std::log1p(static_cast<double>(i) * step);
    grid.nodes.front() = 0.0;
    grid.nodes.back() = 1.0;
    return grid;
}

TimeGrid uniform_partition(std::size_t n) {
    if (n < 2) throw std::invalid_argument("uniform_partition: n must be >= 2");
    TimeGrid grid;
    grid.nodes.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid.nodes[i] = static_cast<double>(i) / static_cast<double>(n);
    grid.nodes.back() = 1.0;
    return grid;
}

TimeGrid make_grid(std::size_t n, MeshKind kind) {
    return kind == MeshKind::logarithmic ? log_partition(n) : uniform_partition(n);
}

void SolverConfig::validate() const {
    if (n < 2) throw std::invalid_argument("SolverConfig: n must be >= 2");
    if (!(eps > 0.0)) throw std::invalid_argument("SolverConfig: eps must be positive");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
}

const char* to_string(SolveMethod m) noexcept { return m == SolveMethod::picard ? "picard" : "backward"; }

namespace {

void require_canonical(const OUBParams& params, const char* what) {
    params.validate();
    if (!params.is_canonical()) {
        throw std::invalid_argument(std::string(what) + ": parameters must be canonical (theta = 0, T = 1)");
    }
}

// Right Riemann sum sum_{j=i}^{N-2} K(t_i, x, t_{j+1}, beta_{j+1}) (t_{j+1} - t_j),
// accumulated in increasing j.
double riemann_tail(const OUBParams& p, const std::vector<double>& t, const std::vector<double>& beta,
                    std::size_t i, double x) {
    const std::size_t n = t.size() - 1;
    double sum = 0.0;
    for (std::size_t j = i; j + 2 <= n; ++j) {
        sum += detail::canonical_kernel(p.alpha, p.gamma, p.z, t[i], x, t[j + 1], beta[j + 1]) *
               (t[j + 1] - t[j]);
    }
    return sum;
}

}  // namespace

BoundarySolution picard_solve(const OUBParams& params, const SolverConfig& cfg) {
    require_canonical(params, "picard_solve");
    cfg.validate();

    BoundarySolution sol;
    sol.method = SolveMethod::picard;
    sol.grid = make_grid(cfg.n, cfg.mesh);
    const auto& t = sol.grid.nodes;
    const std::size_t n = cfg.n;
    const unsigned workers = resolve_workers(cfg.workers);

    std::vector<double> current(n + 1, params.z);
    std::vector<double> next(n + 1, params.z);

    for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
        parallel_for(n, workers,
                     [&](std::size_t i) { next[i] = params.z - riemann_tail(params, t, current, i, current[i]); });
        next[n] = params.z;

        double residual = 0.0;
        for (std::size_t i = 0; i <= n; ++i) residual = std::max(residual, std::abs(next[i] - current[i]));
        if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
        current.swap(next);
        sol.residuals.push_back(residual);
        sol.iterations = k;
        sol.final_residual = residual;
        if (residual < cfg.eps) {
            sol.beta = std::move(current);
            return sol;
        }
    }

    sol.beta = std::move(current);
    std::ostringstream msg;
    msg << "picard_solve: no convergence after " << cfg.max_iter << " iterations (residual "
        << sol.final_residual << ", eps " << cfg.eps << ")";
    throw NonConvergenceError(msg.str(), std::move(sol));
}

BoundarySolution backward_solve(const OUBParams& params, const SolverConfig& cfg) {
    require_canonical(params, "backward_solve");
    cfg.validate();

    constexpr std::size_t kPlainSteps = 20;
    constexpr std::size_t kMaxFixedPoint = 200;
    constexpr double kDamping = 0.5;
    constexpr double kTol = 1e-12;

    BoundarySolution sol;
    sol.method = SolveMethod::backward;
    sol.grid = make_grid(cfg.n, cfg.mesh);
    const auto& t = sol.grid.nodes;
    const std::size_t n = cfg.n;
    sol.beta.assign(n + 1, params.z);

    const double lo_edge = params.z - 10.0 * params.gamma;
    const double hi_edge = params.z + 10.0 * params.gamma;

    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t i = n - 1 - step;
        const auto update = [&](double b) { return params.z - riemann_tail(params, t, sol.beta, i, b); };

        double b = sol.beta[i + 1];
        bool converged = false;
        for (std::size_t it = 0; it < kMaxFixedPoint; ++it) {
            const double target = update(b);
            const double moved = it < kPlainSteps ? target : kDamping * b + (1.0 - kDamping) * target;
            ++sol.iterations;
            if (!std::isfinite(moved)) break;
            const bool done = std::abs(moved - b) < kTol * std::max(1.0, std::abs(b));
            b = moved;
            if (done) {
                converged = true;
                break;
            }
        }

        if (!converged) {
            // Root of g(b) = b - update(b) by bisection on the fixed bracket.
            double lo = lo_edge;
            double hi = hi_edge;
            const double g_lo = lo - update(lo);
            const double g_hi = hi - update(hi);
            if (!(g_lo <= 0.0 && g_hi >= 0.0)) {
                std::ostringstream msg;
                msg << "backward_solve: no sign change on [" << lo << ", " << hi << "] at node " << i;
                throw ScalarSolveError(msg.str(), i);
            }
            while (hi - lo > kTol * std::max(1.0, std::abs(lo))) {
                const double mid = 0.5 * (lo + hi);
                const double g_mid = mid - update(mid);
                ++sol.iterations;
                if (g_mid <= 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            b = 0.5 * (lo + hi);
        }
        sol.beta[i] = b;
    }
    sol.beta[n] = params.z;
    sol.final_residual = 0.0;
    return sol;
}

double boundary_eval(const BoundarySolution& sol, double t) {
    const auto& nodes = sol.grid.nodes;
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("boundary_eval: t must lie in [0, 1]");
    if (t == 1.0) return sol.beta.back();
    const auto hi = std::upper_bound(nodes.begin(), nodes.end(), t);
    const auto k = static_cast<std::size_t>(std::distance(nodes.begin(), hi)) - 1;
    const double w = (t - nodes[k]) / (nodes[k + 1] - nodes[k]);
    return sol.beta[k] + w * (sol.beta[k + 1] - sol.beta[k]);
}

double GeneralBoundary::operator()(double t) const {
    if (t == reduction.original().horizon) return reduction.original().z;
    return reduction.from_canonical_space(boundary_eval(canonical, reduction.to_canonical_time(t)));
}

std::vector<double> GeneralBoundary::times() const {
    std::vector<double> out;
    out.reserve(canonical.grid.nodes.size());
    for (double t : canonical.grid.nodes) out.push_back(reduction.from_canonical_time(t));
    out.back() = reduction.original().horizon;
    return out;
}

std::vector<double> GeneralBoundary::values() const {
    std::vector<double> out;
    out.reserve(canonical.beta.size());
    for (double b : canonical.beta) out.push_back(reduction.from_canonical_space(b));
    out.back() = reduction.original().z;
    return out;
}

GeneralBoundary solve_boundary(const OUBParams& params, const SolverConfig& cfg, SolveMethod method) {
    CanonicalReduction red(params);
    BoundarySolution sol = method == SolveMethod::picard ? picard_solve(red.canonical(), cfg)
                                                         : backward_solve(red.canonical(), cfg);
    return {std::move(red), std::move(sol)};
}

}  // namespace oubstop
