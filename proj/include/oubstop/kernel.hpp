#pragma once

/**
 * @file kernel.hpp
 * @brief Gaussian primitives and the integral kernel of the pricing and
 *        free-boundary equations.
 *
 * K(t1, x1, t2, x2) = E[mu(t2, X_{t2}) 1(X_{t2} >= x2) | X_{t1} = x1], which in
 * closed form reads
 *
 *   alpha [z S - cosh(alpha (1 - t2)) (m S + v d)] / sinh(alpha (1 - t2))
 *
 * with m, v the conditional mean and standard deviation of X_{t2}, and S, d
 * the standard normal survival function and density at (x2 - m) / v.
 */

#include "oubstop/ou_bridge.hpp"
#include "oubstop/transform.hpp"

namespace oubstop {

/// 1 - Phi(u) in complementary-error form (accurate in the upper tail).
double survival(double u);
/// Standard normal density.
double density(double u);

struct KernelQuery {
    double t1 = 0.0;
    double x1 = 0.0;
    double t2 = 0.0;
    double x2 = 0.0;
};

/// Kernel in canonical coordinates. Requires 0 <= t1 <= t2 < 1; at t2 == t1 it
/// returns the continuity limit drift(t1, x1) * 1(x1 >= x2).
/// Throws std::invalid_argument for non-canonical params, std::domain_error
/// for out-of-range times.
double kernel(const OUBParams& params, const KernelQuery& q);

/// E[d/dt G_{c_z}(u, Y) 1(Y >= b_u)] with Y ~ N(y, u - s): the integrand of
/// the transformed pricing formula. Throws std::domain_error unless u > s >= 0.
double transformed_integrand(const TransformContext& ctx, double s, double y, double u, double b_u);

}  // namespace oubstop
