#include "oubstop/ou_bridge.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bridge_math.hpp"

namespace oubstop {

void OUBParams::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(gamma) || !std::isfinite(z) ||
        !std::isfinite(theta) || !std::isfinite(horizon)) {
        throw std::invalid_argument("OUBParams: all fields must be finite");
    }
    if (alpha == 0.0) {
        throw std::invalid_argument("OUBParams: alpha must be nonzero (alpha -> 0 is the Brownian bridge limit)");
    }
    if (gamma <= 0.0) throw std::invalid_argument("OUBParams: gamma must be positive");
    if (horizon <= 0.0) throw std::invalid_argument("OUBParams: horizon must be positive");
}

CanonicalReduction::CanonicalReduction(const OUBParams& params)
    : original_(params), time_scale_(1.0 / params.horizon), space_shift_(params.theta) {
    params.validate();
    canonical_.alpha = params.alpha * params.horizon;
    canonical_.gamma = params.gamma * std::sqrt(params.horizon);
    canonical_.z = params.z - params.theta;
    canonical_.theta = 0.0;
    canonical_.horizon = 1.0;
}

CanonicalReduction reduce_to_canonical(const OUBParams& params) { return CanonicalReduction(params); }

namespace {

void require_time(bool ok, const char* what, double t) {
    if (!ok) throw std::domain_error(std::string(what) + ": time out of range (" + std::to_string(t) + ")");
}

}  // namespace

double drift(const OUBParams& params, double t, double x) {
    const CanonicalReduction red(params);
    const double tc = red.to_canonical_time(t);
    require_time(tc >= 0.0 && tc < 1.0, "drift", t);
    const auto& c = red.canonical();
    return detail::canonical_drift(c.alpha, c.z, tc, red.to_canonical_space(x)) * red.time_scale();
}

double cond_mean(const OUBParams& params, double t1, double x1, double t2) {
    const CanonicalReduction red(params);
    const double s1 = red.to_canonical_time(t1);
    const double s2 = red.to_canonical_time(t2);
    require_time(s1 >= 0.0 && s1 <= s2 && s2 <= 1.0, "cond_mean", t2);
    const auto& c = red.canonical();
    if (s2 == 1.0) return params.z;
    return red.from_canonical_space(detail::canonical_cond_mean(c.alpha, c.z, s1, red.to_canonical_space(x1), s2));
}

double cond_std(const OUBParams& params, double t1, double t2) {
    const CanonicalReduction red(params);
    const double s1 = red.to_canonical_time(t1);
    const double s2 = red.to_canonical_time(t2);
    require_time(s1 >= 0.0 && s1 <= s2 && s2 <= 1.0, "cond_std", t2);
    const auto& c = red.canonical();
    return detail::canonical_cond_std(c.alpha, c.gamma, s1, s2);
}

TransitionLaw transition_law(const OUBParams& params, double t1, double t2) {
    const CanonicalReduction red(params);
    const double s1 = red.to_canonical_time(t1);
    const double s2 = red.to_canonical_time(t2);
    require_time(s1 >= 0.0 && s1 < s2 && s2 <= 1.0, "transition_law", t2);
    const auto& c = red.canonical();
    if (s2 == 1.0) return {0.0, params.z, 0.0};
    const double denom = std::sinh(c.alpha * (1.0 - s1));
    const double slope = std::sinh(c.alpha * (1.0 - s2)) / denom;
    const double canonical_offset = c.z * std::sinh(c.alpha * (s2 - s1)) / denom;
    // x' = slope (x - theta) + offset_c + theta
    const double offset = canonical_offset + params.theta * (1.0 - slope);
    return {slope, offset, detail::canonical_cond_std(c.alpha, c.gamma, s1, s2)};
}

double sample_transition(const OUBParams& params, const ProcessState& state, double t2, RngStream& rng) {
    if (!(state.t < t2)) throw std::domain_error("sample_transition: requires state.t < t2");
    const double m = cond_mean(params, state.t, state.x, t2);
    const double v = cond_std(params, state.t, t2);
    if (v == 0.0) return m;
    return m + v * rng.normal();
}

}  // namespace oubstop
