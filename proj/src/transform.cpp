#include "oubstop/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oubstop {

namespace {

void require_unit_interval(double t, const char* what) {
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error(std::string(what) + ": t must lie in [0, 1)");
}

}  // namespace

double kappa(double alpha, double t) { return -std::expm1(-2.0 * alpha * t) / (2.0 * alpha); }

double kappa_inv(double alpha, double s) {
    const double arg = -2.0 * alpha * s;
    if (!(1.0 + arg > 0.0)) throw std::domain_error("kappa_inv: s outside the image of kappa");
    return -std::log1p(arg) / (2.0 * alpha);
}

// kappa(1) - kappa(t) = e^{-2 alpha t} kappa(1 - t), which avoids the
// cancellation of the direct difference as t -> 1.
double psi(double alpha, double t) {
    require_unit_interval(t, "psi");
    return kappa(alpha, t) * kappa(alpha, 1.0) / (std::exp(-2.0 * alpha * t) * kappa(alpha, 1.0 - t));
}

double upsilon(double alpha, double t) {
    return psi(alpha, t) * std::exp(-alpha) / kappa(alpha, 1.0);
}

double upsilon_prime(double alpha, double t) {
    require_unit_interval(t, "upsilon_prime");
    const double tail = kappa(alpha, 1.0 - t);
    return std::exp(-alpha + 2.0 * alpha * t) * kappa(alpha, 1.0) / (tail * tail);
}

double upsilon_inv(double alpha, double s) {
    if (!(s >= 0.0)) throw std::domain_error("upsilon_inv: s must be non-negative");
    if (std::isinf(s)) return 1.0;
    const double k1 = kappa(alpha, 1.0);
    const double p = s * k1 * std::exp(alpha);
    return kappa_inv(alpha, p * k1 / (p + k1));
}

double space_factor(double alpha, double s) {
    return std::sqrt((std::exp(alpha) + s) * (std::exp(-alpha) + s));
}

double space_factor_prime(double alpha, double s) {
    const double a = std::exp(-alpha) + std::exp(alpha);
    return (a + 2.0 * s) / (2.0 * space_factor(alpha, s));
}

double gain(double c, double alpha, double s, double y) { return (c * s + y) / space_factor(alpha, s); }

double gain_t(double c, double alpha, double s, double y) {
    const double f = space_factor(alpha, s);
    const double fp = space_factor_prime(alpha, s);
    return (c * (f - s * fp) - fp * y) / (f * f);
}

double gain_x(double alpha, double s) { return 1.0 / space_factor(alpha, s); }

double continuation_floor(double c, double alpha, double s) {
    const double f = space_factor(alpha, s);
    const double fp = space_factor_prime(alpha, s);
    return c * (f - s * fp) / fp;
}

TransformContext::TransformContext(const OUBParams& params) {
    params.validate();
    if (!params.is_canonical()) {
        throw std::invalid_argument("TransformContext: parameters must be canonical (theta = 0, T = 1)");
    }
    alpha_ = params.alpha;
    gamma_ = params.gamma;
    z_ = params.z;
    a_ = std::exp(-alpha_) + std::exp(alpha_);
    scale_ = gamma_ * std::sqrt(kappa(alpha_, 1.0) * std::exp(alpha_));
    c_z_ = z_ / scale_;
}

OriginalPoint boundary_to_original(const TransformContext& ctx, double s, double b_s) {
    if (!(s >= 0.0)) throw std::domain_error("boundary_to_original: s must be non-negative");
    return {upsilon_inv(ctx.alpha(), s), ctx.scale() * gain(ctx.c_z(), ctx.alpha(), s, b_s)};
}

TransformedPoint original_to_transformed(const TransformContext& ctx, double t, double beta_t) {
    const double s = upsilon(ctx.alpha(), t);
    return {s, beta_t * space_factor(ctx.alpha(), s) / ctx.scale() - ctx.c_z() * s};
}

double value_to_original(const TransformContext& ctx, double w_value) { return ctx.scale() * w_value; }

}  // namespace oubstop
