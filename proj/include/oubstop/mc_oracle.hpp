#pragma once

/**
 * @file mc_oracle.hpp
 * @brief Independent checks of a solved boundary: exact-law Monte Carlo of the
 *        stopped bridge, paired perturbation tests, and a quadrature oracle for
 *        the kernel.
 *
 * Paths are sampled exactly on a time mesh and the stopping rule is monitored
 * at the mesh nodes only. Paths are grouped in fixed-size blocks; block b draws
 * from RngStream(seed, b), and block statistics are merged in block order, so
 * results do not depend on the worker count.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oubstop/kernel.hpp"
#include "oubstop/ou_bridge.hpp"
#include "oubstop/solver.hpp"

namespace oubstop {

struct MCConfig {
    std::size_t paths = 100000;
    std::size_t time_nodes = 0;  ///< 0: monitor on the solver mesh; otherwise a log mesh of this size
    std::uint64_t seed = 20240611;
    unsigned workers = 0;

    void validate() const;
};

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(n)
    std::size_t n = 0;
};

struct PerturbationResult {
    double delta = 0.0;
    MCEstimate estimate;       ///< payoff of the rule "stop when X >= beta + delta"
    double diff_mean = 0.0;    ///< paired mean of payoff(delta) - payoff(0)
    double diff_std_error = 0.0;
};

/// Payoff of stopping at the first monitored node where X >= beta(t), or z at t = 1.
/// Canonical params; requires 0 <= t0 < 1.
MCEstimate simulate_stopped_payoff(const OUBParams& params, const BoundarySolution& sol, double t0, double x0,
                                   const MCConfig& cfg);

/// Evaluates the rules beta + delta on common paths. The paired statistics are
/// taken against delta = 0, which is always simulated.
std::vector<PerturbationResult> perturbation_test(const OUBParams& params, const BoundarySolution& sol,
                                                  const std::vector<double>& deltas, double t0, double x0,
                                                  const MCConfig& cfg);

/// int drift(t2, w) 1(w >= x2) N(w; m, v^2) dw by adaptive Gauss-Kronrod
/// quadrature on [max(x2, m - 12 v), m + 12 v]; the neglected Gaussian tails
/// are below 1e-30 relative to the drift scale. Canonical params, t1 < t2 < 1.
double kernel_oracle(const OUBParams& params, const KernelQuery& q);

}  // namespace oubstop
