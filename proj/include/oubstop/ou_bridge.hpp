#pragma once

/**
 * @file ou_bridge.hpp
 * @brief Ornstein-Uhlenbeck bridge: parameters, drift and Gaussian transition law.
 *
 * The bridge is pinned at X_T = z. Its drift in canonical coordinates
 * (pulling level 0, horizon 1) is
 *
 *   mu(t, x) = alpha (z - cosh(alpha (1 - t)) x) / sinh(alpha (1 - t))
 *
 * and its transitions are Gaussian with closed-form mean and variance, so
 * sampling is exact on any time mesh.
 *
 * General pulling level theta and horizon T are handled by CanonicalReduction:
 * shift space by theta first, then rescale time by 1/T. Every operation here
 * accepts general parameters and routes through that reduction.
 */

#include "oubstop/rng.hpp"

namespace oubstop {

/// Parameters of an OU bridge with slope alpha, volatility gamma, pinning
/// value z, pulling level theta and horizon T.
struct OUBParams {
    double alpha = 1.0;
    double gamma = 1.0;
    double z = 0.0;
    double theta = 0.0;
    double horizon = 1.0;

    /// Throws std::invalid_argument on alpha == 0, gamma <= 0, horizon <= 0
    /// or non-finite fields.
    void validate() const;

    bool is_canonical() const noexcept { return theta == 0.0 && horizon == 1.0; }
};

struct ProcessState {
    double t = 0.0;
    double x = 0.0;
};

/// Affine maps between general and canonical (theta = 0, T = 1) coordinates.
///
///   canonical time   = t / T            (time_scale = 1 / T)
///   canonical space  = x - space_shift, space_shift = theta
///   canonical alpha  = alpha * T,       canonical gamma = gamma * sqrt(T)
///   canonical z      = z - theta
class CanonicalReduction {
public:
    explicit CanonicalReduction(const OUBParams& params);

    const OUBParams& original() const noexcept { return original_; }
    const OUBParams& canonical() const noexcept { return canonical_; }
    double time_scale() const noexcept { return time_scale_; }
    double space_shift() const noexcept { return space_shift_; }

    double to_canonical_time(double t) const noexcept { return t / original_.horizon; }
    double from_canonical_time(double t) const noexcept { return t * original_.horizon; }
    double to_canonical_space(double x) const noexcept { return x - space_shift_; }
    double from_canonical_space(double x) const noexcept { return x + space_shift_; }

    ProcessState to_canonical(ProcessState s) const noexcept {
        return {to_canonical_time(s.t), to_canonical_space(s.x)};
    }
    ProcessState from_canonical(ProcessState s) const noexcept {
        return {from_canonical_time(s.t), from_canonical_space(s.x)};
    }

private:
    OUBParams original_;
    OUBParams canonical_;
    double time_scale_;
    double space_shift_;
};

CanonicalReduction reduce_to_canonical(const OUBParams& params);

/// Drift mu(t, x). Throws std::domain_error unless 0 <= t < horizon.
double drift(const OUBParams& params, double t, double x);

/// E[X_{t2} | X_{t1} = x1] for 0 <= t1 <= t2 <= horizon.
double cond_mean(const OUBParams& params, double t1, double x1, double t2);

/// sqrt(Var[X_{t2} | X_{t1}]) for 0 <= t1 <= t2 <= horizon. Zero at t2 = t1
/// and at t2 = horizon.
double cond_std(const OUBParams& params, double t1, double t2);

/// One exact transition step t1 -> t2: X_{t2} = slope * x + offset + stddev * N(0,1).
struct TransitionLaw {
    double slope = 1.0;
    double offset = 0.0;
    double stddev = 0.0;

    double mean(double x) const noexcept { return slope * x + offset; }
};

TransitionLaw transition_law(const OUBParams& params, double t1, double t2);

/// Draw X_{t2} given the state. Returns z exactly when t2 is the horizon.
/// Throws std::domain_error unless state.t < t2 <= horizon.
double sample_transition(const OUBParams& params, const ProcessState& state, double t2,
                         RngStream& rng);

}  // namespace oubstop
