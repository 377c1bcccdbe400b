#pragma once

/**
 * @file pricing.hpp
 * @brief Value function from a solved boundary.
 *
 * V(t, x) = z - int_t^1 K(t, x, u, beta(u)) du, discretized with the solver's
 * own mesh and right Riemann sum so that value matching at the boundary holds
 * up to the Picard tolerance. V(t, x) = x in the stopping region x >= beta(t).
 *
 * The transformed formula W(s, y) = c_z - int_s^inf E[dG/dt 1(Y >= b)] du is
 * provided as an independent mirror: scale * W(upsilon(t), y(x)) = V(t, x).
 */

#include <vector>

#include "oubstop/ou_bridge.hpp"
#include "oubstop/solver.hpp"
#include "oubstop/transform.hpp"

namespace oubstop {

struct ValueSurfaceQuery {
    double t = 0.0;
    double x = 0.0;
    /// Return x when x >= beta(t). Off: always evaluate the quadrature.
    bool clamp_stopping_region = true;
};

/// Canonical params only. Throws std::domain_error unless 0 <= t < 1.
double value(const OUBParams& params, const BoundarySolution& sol, const ValueSurfaceQuery& q);

/// V for general parameters through the canonical reduction held by the boundary.
double value(const GeneralBoundary& boundary, double t, double x, bool clamp_stopping_region = true);

/// Solved boundary carried to transformed coordinates.
///
/// Quadrature nodes are images under upsilon of the solver mesh t_0 .. t_{N-1},
/// each interval split into `refine` equal pieces, followed by `tail_nodes`
/// nodes geometric in 1 - t up to s_max = upsilon(1 - cutoff). Off-mesh boundary
/// values come from the piecewise-linear original boundary. Unlike the
/// original-coordinate value, this covers the piece beyond t_{N-1}.
///
/// Holds a pointer to `sol`, which must outlive the object.
class TransformedBoundary {
public:
    TransformedBoundary(const TransformContext& ctx, const BoundarySolution& sol, double cutoff = 1e-6,
                        std::size_t refine = 16, std::size_t tail_nodes = 800);

    /// b(s), mapped from the interpolated original boundary at upsilon^-1(s).
    double operator()(double s) const;

    const std::vector<double>& nodes() const noexcept { return s_; }
    const std::vector<double>& values() const noexcept { return b_; }
    /// Index of the first node beyond upsilon(t_{N-1}).
    std::size_t tail_start() const noexcept { return tail_start_; }
    const TransformContext& context() const noexcept { return ctx_; }

private:
    TransformContext ctx_;
    const BoundarySolution* sol_;
    std::vector<double> s_;
    std::vector<double> b_;
    std::size_t tail_start_;
};

/// W_{c_z}(s, y): gain in the stopping region y >= b(s), otherwise c_z minus the
/// right Riemann sum of the transformed integrand over the nodes beyond s.
double transformed_value(const TransformedBoundary& boundary, double s, double y);

}  // namespace oubstop
