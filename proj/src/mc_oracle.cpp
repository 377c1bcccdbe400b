#include "oubstop/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bridge_math.hpp"
#include "kernel_math.hpp"
#include "oubstop/parallel.hpp"
#include "oubstop/rng.hpp"

namespace oubstop {

void MCConfig::validate() const {
    if (paths < 1) throw std::invalid_argument("MCConfig: paths must be >= 1");
    if (time_nodes == 1) throw std::invalid_argument("MCConfig: time_nodes must be 0 or >= 2");
}

namespace {

constexpr std::size_t kBlockSize = 1024;

// Welford accumulator; merge() follows Chan et al. so blocks can be combined.
struct RunningStats {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const RunningStats& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(n + o.n);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / total;
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }

    MCEstimate estimate() const {
        MCEstimate e;
        e.mean = mean;
        e.n = n;
        e.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
        return e;
    }
};

struct MonitoringPlan {
    std::vector<double> times;         // t0, then mesh nodes after t0; last entry is 1
    std::vector<double> boundary;      // beta at times[k], k < times.size() - 1
    std::vector<TransitionLaw> steps;  // times[k] -> times[k + 1]
};

MonitoringPlan make_plan(const OUBParams& params, const BoundarySolution& sol, double t0, const MCConfig& cfg) {
    const TimeGrid mesh = cfg.time_nodes == 0 ? sol.grid : log_partition(cfg.time_nodes);
    MonitoringPlan plan;
    plan.times.push_back(t0);
    for (double t : mesh.nodes) {
        if (t > t0) plan.times.push_back(t);
    }
    for (std::size_t k = 0; k + 1 < plan.times.size(); ++k) {
        plan.boundary.push_back(boundary_eval(sol, plan.times[k]));
        plan.steps.push_back(transition_law(params, plan.times[k], plan.times[k + 1]));
    }
    return plan;
}

// Per-delta payoff stats and paired difference stats against delta index `base`.
struct BlockResult {
    std::vector<RunningStats> payoff;
    std::vector<RunningStats> diff;
};

std::vector<PerturbationResult> run(const OUBParams& params, const BoundarySolution& sol,
                                    const std::vector<double>& deltas, double t0, double x0, const MCConfig& cfg) {
    params.validate();
    if (!params.is_canonical()) throw std::invalid_argument("Monte Carlo: parameters must be canonical");
    cfg.validate();
    if (!(t0 >= 0.0 && t0 < 1.0)) throw std::domain_error("Monte Carlo: t0 must lie in [0, 1)");

    // Index 0 is always delta = 0 for the paired comparison.
    std::vector<double> rules{0.0};
    for (double d : deltas) rules.push_back(d);

    const MonitoringPlan plan = make_plan(params, sol, t0, cfg);
    const std::size_t n_rules = rules.size();
    const std::size_t n_blocks = (cfg.paths + kBlockSize - 1) / kBlockSize;
    std::vector<BlockResult> blocks(n_blocks);

    parallel_for(n_blocks, resolve_workers(cfg.workers), [&](std::size_t b) {
        RngStream rng(cfg.seed, b);
        BlockResult& out = blocks[b];
        out.payoff.assign(n_rules, {});
        out.diff.assign(n_rules, {});
        std::vector<double> payoff(n_rules);
        std::vector<char> stopped(n_rules);
        const std::size_t begin = b * kBlockSize;
        const std::size_t end = std::min(cfg.paths, begin + kBlockSize);

        for (std::size_t path = begin; path < end; ++path) {
            std::fill(stopped.begin(), stopped.end(), 0);
            double x = x0;
            for (std::size_t k = 0; k < plan.steps.size(); ++k) {
                for (std::size_t r = 0; r < n_rules; ++r) {
                    if (!stopped[r] && x >= plan.boundary[k] + rules[r]) {
                        stopped[r] = 1;
                        payoff[r] = x;
                    }
                }
                // Every path consumes the same draws so rules see common numbers.
                const TransitionLaw& law = plan.steps[k];
                x = law.stddev > 0.0 ? law.mean(x) + law.stddev * rng.normal() : law.mean(x);
            }
            for (std::size_t r = 0; r < n_rules; ++r) {
                if (!stopped[r]) payoff[r] = params.z;
                out.payoff[r].add(payoff[r]);
                out.diff[r].add(payoff[r] - payoff[0]);
            }
        }
    });

    std::vector<RunningStats> payoff(n_rules);
    std::vector<RunningStats> diff(n_rules);
    for (const auto& blk : blocks) {
        for (std::size_t r = 0; r < n_rules; ++r) {
            payoff[r].merge(blk.payoff[r]);
            diff[r].merge(blk.diff[r]);
        }
    }

    std::vector<PerturbationResult> results;
    for (std::size_t r = 0; r < n_rules; ++r) {
        const MCEstimate d = diff[r].estimate();
        results.push_back({rules[r], payoff[r].estimate(), d.mean, d.std_error});
    }
    return results;
}

}  // namespace

MCEstimate simulate_stopped_payoff(const OUBParams& params, const BoundarySolution& sol, double t0, double x0,
                                   const MCConfig& cfg) {
    return run(params, sol, {}, t0, x0, cfg).front().estimate;
}

std::vector<PerturbationResult> perturbation_test(const OUBParams& params, const BoundarySolution& sol,
                                                  const std::vector<double>& deltas, double t0, double x0,
                                                  const MCConfig& cfg) {
    auto all = run(params, sol, deltas, t0, x0, cfg);
    all.erase(all.begin());
    return all;
}

double kernel_oracle(const OUBParams& params, const KernelQuery& q) {
    params.validate();
    if (!params.is_canonical()) throw std::invalid_argument("kernel_oracle: parameters must be canonical");
    if (!(q.t1 >= 0.0 && q.t1 < q.t2 && q.t2 < 1.0)) throw std::domain_error("kernel_oracle: requires 0 <= t1 < t2 < 1");

    const double m = detail::canonical_cond_mean(params.alpha, params.z, q.t1, q.x1, q.t2);
    const double v = detail::canonical_cond_std(params.alpha, params.gamma, q.t1, q.t2);
    const double hi = m + 12.0 * v;
    const double lo = std::max(q.x2, m - 12.0 * v);
    if (lo >= hi) return 0.0;

    const auto integrand = [&](double w) {
        const double u = (w - m) / v;
        return detail::canonical_drift(params.alpha, params.z, q.t2, w) * std::exp(-0.5 * u * u) /
               (v * std::sqrt(2.0 * std::numbers::pi));
    };
    double error = 0.0;
    const double result =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 20, 1e-14, &error);
    if (!std::isfinite(result)) throw std::runtime_error("kernel_oracle: quadrature failed");
    return result;
}

}  // namespace oubstop
