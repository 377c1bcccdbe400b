#include "oubstop/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kernel_math.hpp"
#include "oubstop/kernel.hpp"

namespace oubstop {

double value(const OUBParams& params, const BoundarySolution& sol, const ValueSurfaceQuery& q) {
    params.validate();
    if (!params.is_canonical()) throw std::invalid_argument("value: parameters must be canonical");
    if (!(q.t >= 0.0 && q.t < 1.0)) throw std::domain_error("value: t must lie in [0, 1)");
    if (q.clamp_stopping_region && q.x >= boundary_eval(sol, q.t)) return q.x;

    const auto& nodes = sol.grid.nodes;
    const std::size_t n = nodes.size() - 1;
    auto k = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), q.t) - nodes.begin());

    // Right Riemann sum over nodes t_k .. t_{N-1}; the piece ending at t_N = 1 is dropped.
    double sum = 0.0;
    double prev = q.t;
    for (; k < n; ++k) {
        sum += detail::canonical_kernel(params.alpha, params.gamma, params.z, q.t, q.x, nodes[k], sol.beta[k]) *
               (nodes[k] - prev);
        prev = nodes[k];
    }
    return params.z - sum;
}

double value(const GeneralBoundary& boundary, double t, double x, bool clamp_stopping_region) {
    const auto& red = boundary.reduction;
    const ValueSurfaceQuery q{red.to_canonical_time(t), red.to_canonical_space(x), clamp_stopping_region};
    if (clamp_stopping_region && x >= boundary(t)) return x;
    return red.from_canonical_space(value(red.canonical(), boundary.canonical, q));
}

TransformedBoundary::TransformedBoundary(const TransformContext& ctx, const BoundarySolution& sol, double cutoff,
                                         std::size_t refine, std::size_t tail_nodes)
    : ctx_(ctx), sol_(&sol) {
    if (!(cutoff > 0.0 && cutoff < 1.0)) throw std::invalid_argument("TransformedBoundary: cutoff in (0, 1)");
    const auto& t = sol.grid.nodes;
    const std::size_t n = t.size() - 1;
    refine = std::max<std::size_t>(refine, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            for (std::size_t r = 1; r < refine; ++r) {
                const double tr = t[i - 1] + (t[i] - t[i - 1]) * static_cast<double>(r) / static_cast<double>(refine);
                const auto p = original_to_transformed(ctx_, tr, boundary_eval(sol, tr));
                s_.push_back(p.s);
                b_.push_back(p.y);
            }
        }
        const auto p = original_to_transformed(ctx_, t[i], sol.beta[i]);
        s_.push_back(p.s);
        b_.push_back(p.y);
    }
    tail_start_ = s_.size();

    // Geometric spacing in 1 - t between t_{N-1} and 1 - cutoff.
    const double gap_start = 1.0 - t[n - 1];
    if (tail_nodes > 0 && gap_start > cutoff) {
        const double ratio = std::pow(cutoff / gap_start, 1.0 / static_cast<double>(tail_nodes));
        double gap = gap_start;
        for (std::size_t m = 0; m < tail_nodes; ++m) {
            gap *= ratio;
            const double tm = m + 1 == tail_nodes ? 1.0 - cutoff : 1.0 - gap;
            const auto p = original_to_transformed(ctx_, tm, boundary_eval(sol, tm));
            s_.push_back(p.s);
            b_.push_back(p.y);
        }
    }
}

double TransformedBoundary::operator()(double s) const {
    const double t = upsilon_inv(ctx_.alpha(), s);
    if (t >= 1.0) throw std::domain_error("TransformedBoundary: s beyond representable range");
    return original_to_transformed(ctx_, t, boundary_eval(*sol_, t)).y;
}

double transformed_value(const TransformedBoundary& boundary, double s, double y) {
    if (!(s >= 0.0)) throw std::domain_error("transformed_value: s must be non-negative");
    const auto& ctx = boundary.context();
    if (y >= boundary(s)) return gain(ctx.c_z(), ctx.alpha(), s, y);

    const auto& nodes = boundary.nodes();
    const auto& b = boundary.values();
    auto k = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
    double sum = 0.0;
    double prev = s;
    for (; k < nodes.size(); ++k) {
        sum += transformed_integrand(ctx, s, y, nodes[k], b[k]) * (nodes[k] - prev);
        prev = nodes[k];
    }
    return ctx.c_z() - sum;
}

}  // namespace oubstop
