#pragma once

#include <cmath>
#include <numbers>

#include "bridge_math.hpp"

namespace oubstop::detail {

inline double normal_survival(double u) { return 0.5 * std::erfc(u / std::numbers::sqrt2); }

inline double normal_density(double u) {
    return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

// E[mu(t2, X_{t2}) 1(X_{t2} >= x2) | X_{t1} = x1] in canonical coordinates,
// for 0 <= t1 < t2 < 1. The bracket is formed before dividing by sinh.
inline double canonical_kernel(double alpha, double gamma, double z, double t1, double x1, double t2,
                               double x2) {
    const double m = canonical_cond_mean(alpha, z, t1, x1, t2);
    const double v = canonical_cond_std(alpha, gamma, t1, t2);
    const double u = (x2 - m) / v;
    const double tail = normal_survival(u);
    const double dens = normal_density(u);
    const double tau = alpha * (1.0 - t2);
    const double bracket = z * tail - std::cosh(tau) * (m * tail + v * dens);
    return alpha * bracket / std::sinh(tau);
}

}  // namespace oubstop::detail
