#pragma once

// Canonical-coordinate (theta = 0, T = 1) closed forms shared by the bridge,
// kernel and Monte Carlo code. Callers validate times; nothing here throws.

#include <algorithm>
#include <cmath>

namespace oubstop::detail {

inline double canonical_drift(double alpha, double z, double t, double x) {
    const double tau = alpha * (1.0 - t);
    return alpha * (z - std::cosh(tau) * x) / std::sinh(tau);
}

inline double canonical_cond_mean(double alpha, double z, double t1, double x1, double t2) {
    if (t2 == t1) return x1;
    if (t2 == 1.0) return z;
    const double denom = std::sinh(alpha * (1.0 - t1));
    return (x1 * std::sinh(alpha * (1.0 - t2)) + z * std::sinh(alpha * (t2 - t1))) / denom;
}

inline double canonical_cond_var(double alpha, double gamma, double t1, double t2) {
    if (t2 == t1 || t2 == 1.0) return 0.0;
    // Each sinh carries the sign of alpha, so the quotient with 1/alpha is >= 0.
    const double ratio =
        std::sinh(alpha * (1.0 - t2)) * std::sinh(alpha * (t2 - t1)) / std::sinh(alpha * (1.0 - t1));
    return std::max(0.0, gamma * gamma * ratio / alpha);
}

inline double canonical_cond_std(double alpha, double gamma, double t1, double t2) {
    return std::sqrt(canonical_cond_var(alpha, gamma, t1, t2));
}

}  // namespace oubstop::detail
