#pragma once

/**
 * @file transform.hpp
 * @brief Time-space change carrying the canonical OU bridge problem to an
 *        infinite-horizon problem driven by a Brownian motion.
 *
 * With kappa(t) = (1 - e^{-2 alpha t}) / (2 alpha) and
 * psi(t) = kappa(t) kappa(1) / (kappa(1) - kappa(t)), the time change is
 * s = upsilon(t) = psi(t) e^{-alpha} / kappa(1), a bijection [0, 1) -> [0, inf).
 * Space maps through x = scale * G_c(s, y), where
 *
 *   G_c(s, y) = (c s + y) / f(s),   f(s) = sqrt((e^alpha + s)(e^-alpha + s)),
 *   scale     = gamma sqrt(kappa(1) e^alpha),  c_z = z / scale.
 *
 * The scale factor replaces the ratio z / c_z everywhere so that z = 0 is a
 * regular case.
 */

#include "oubstop/ou_bridge.hpp"

namespace oubstop {

double kappa(double alpha, double t);
/// Throws std::domain_error when 1 - 2 alpha s <= 0.
double kappa_inv(double alpha, double s);

/// Throws std::domain_error outside [0, 1).
double psi(double alpha, double t);
/// Throws std::domain_error outside [0, 1).
double upsilon(double alpha, double t);
/// d upsilon / dt. Throws std::domain_error outside [0, 1).
double upsilon_prime(double alpha, double t);
/// Inverse of upsilon on [0, inf). Throws std::domain_error for s < 0.
double upsilon_inv(double alpha, double s);

/// f(s) = sqrt((e^alpha + s)(e^-alpha + s)), s >= 0.
double space_factor(double alpha, double s);
/// f'(s) = (a + 2 s) / (2 f(s)) with a = e^-alpha + e^alpha.
double space_factor_prime(double alpha, double s);

double gain(double c, double alpha, double s, double y);
/// Time derivative of the gain, which is also its generator image for Brownian motion.
double gain_t(double c, double alpha, double s, double y);
double gain_x(double alpha, double s);

/// c (f(s) - s f'(s)) / f'(s), the root in y of gain_t. The gain grows in time
/// strictly below this level, so the transformed stopping boundary lies
/// strictly above it.
double continuation_floor(double c, double alpha, double s);

struct TransformedPoint {
    double s = 0.0;
    double y = 0.0;
};

struct OriginalPoint {
    double t = 0.0;
    double x = 0.0;
};

/// Constants of the equivalence for one canonical parameter set.
class TransformContext {
public:
    /// Throws std::invalid_argument unless params are valid and canonical.
    explicit TransformContext(const OUBParams& params);

    double alpha() const noexcept { return alpha_; }
    double gamma() const noexcept { return gamma_; }
    double z() const noexcept { return z_; }
    double c_z() const noexcept { return c_z_; }
    /// e^-alpha + e^alpha
    double a() const noexcept { return a_; }
    /// gamma sqrt(kappa(1) e^alpha); z = c_z * scale
    double scale() const noexcept { return scale_; }

private:
    double alpha_;
    double gamma_;
    double z_;
    double c_z_;
    double a_;
    double scale_;
};

/// (s, b(s)) -> (upsilon^-1(s), scale * G_{c_z}(s, b(s))).
OriginalPoint boundary_to_original(const TransformContext& ctx, double s, double b_s);

/// (t, beta(t)) -> (upsilon(t), beta(t) f(s) / scale - c_z s). Throws at t >= 1.
TransformedPoint original_to_transformed(const TransformContext& ctx, double t, double beta_t);

/// V(t, x) = scale * W_{c_z}(s, y).
double value_to_original(const TransformContext& ctx, double w_value);

}  // namespace oubstop
