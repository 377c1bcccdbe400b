#include "oubstop/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "kernel_math.hpp"

namespace oubstop {

double survival(double u) { return detail::normal_survival(u); }

double density(double u) { return detail::normal_density(u); }

double kernel(const OUBParams& params, const KernelQuery& q) {
    params.validate();
    if (!params.is_canonical()) throw std::invalid_argument("kernel: parameters must be canonical");
    if (!(q.t1 >= 0.0 && q.t1 <= q.t2)) throw std::domain_error("kernel: requires 0 <= t1 <= t2");
    if (!(q.t2 < 1.0)) throw std::domain_error("kernel: undefined at t2 >= 1");
    if (q.t2 == q.t1) {
        return q.x1 >= q.x2 ? detail::canonical_drift(params.alpha, params.z, q.t1, q.x1) : 0.0;
    }
    return detail::canonical_kernel(params.alpha, params.gamma, params.z, q.t1, q.x1, q.t2, q.x2);
}

double transformed_integrand(const TransformContext& ctx, double s, double y, double u, double b_u) {
    if (!(s >= 0.0 && u > s)) throw std::domain_error("transformed_integrand: requires u > s >= 0");
    const double root = std::sqrt(u - s);
    const double w = (b_u - y) / root;
    const double tail = detail::normal_survival(w);
    const double dens = detail::normal_density(w);
    const double f = space_factor(ctx.alpha(), u);
    const double c = ctx.c_z();
    return (c * tail - (ctx.a() + 2.0 * u) * ((y + c * u) * tail + root * dens) / (2.0 * f * f)) / f;
}

}  // namespace oubstop
