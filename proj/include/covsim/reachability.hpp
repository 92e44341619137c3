#pragma once

#include "covsim/types.hpp"

#include <optional>

namespace covsim {

/// Pairwise collision-avoidance parameters: collision radius c_r (m), input
/// bound u_max (m/s^2) shared by evader and pursuer, and the conflict horizon
/// t_safety (s) below which the time-to-reach triggers the safety controller.
struct SafetyParams {
    Scalar c_r = 2.0;
    Scalar u_max = 3.0;
    Scalar t_safety = 5.0;
};

/// Closed-form partial derivatives of the time-to-reach psi with respect to
/// the relative position and velocity.
struct TtrGradients {
    Vec2 d_p = Vec2::Zero();
    Vec2 d_v = Vec2::Zero();
};

/// Time for the relative state to reach the collision disc |p_r| <= c_r under
/// optimal evasion against worst-case pursuit. Because the optimal inputs
/// cancel, the relative motion is ballistic and psi is the smaller root of
///
///   |v_r|^2 psi^2 + 2 (p_r . v_r) psi + (|p_r|^2 - c_r^2) = 0.
///
/// Returns 0 inside the disc and +infinity outside the capturability set
/// (separating motion, zero relative velocity, or a line that misses the
/// disc). The root is evaluated in the cancellation-free form
/// (|p_r|^2 - c_r^2) / (-(p_r . v_r) + sqrt(Delta)).
Scalar time_to_reach(const RelativeState& z, Scalar c_r);

/// Partials of psi by implicit differentiation of the quadratic:
///   dpsi/dp = -(v psi + p) / D,  dpsi/dv = -(v psi^2 + p psi) / D,
/// with the shared denominator D = |v|^2 psi + p . v (equal to -sqrt(Delta)
/// at the smaller root). Requires 0 < psi < inf. Empty when |D| <= 1e-12,
/// the tangent-grazing case where psi is not differentiable.
std::optional<TtrGradients> ttr_gradients(const RelativeState& z, Scalar c_r,
                                          Scalar psi);

/// Optimal evasion control u_max * g / |g| with g = dpsi/dv. Defined for
/// states with finite positive time-to-reach and non-degenerate gradient;
/// empty otherwise.
std::optional<Vec2> avoid_control(const RelativeState& z,
                                  const SafetyParams& params);

/// Residual of the stationary HJ equation min_u max_d {-grad(psi) . f - 1}
/// at z. The optimizing control and disturbance cancel, leaving
/// -(dpsi/dp . v_r) - 1, which is zero wherever psi solves the PDE.
std::optional<Scalar> hamiltonian_residual(const RelativeState& z, Scalar c_r);

/// Independent geometric oracle: first t >= 0 at which the straight line
/// p_r + t v_r enters the disc of radius c_r, computed from the closest
/// approach and half chord rather than the quadratic roots.
Scalar ttr_oracle(const RelativeState& z, Scalar c_r);

}  // namespace covsim
