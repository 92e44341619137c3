#pragma once

#include "covsim/polygon.hpp"
#include "covsim/types.hpp"

#include <span>

namespace covsim {

/// Coverage controller parameters. The inter-vehicle and vehicle-domain
/// forces are linear springs; r_d is the desired spacing, k_inter and
/// k_domain the stiffnesses (1/s^2), damping the braking coefficient (1/s),
/// identical across vehicles.
struct CoverageParams {
    Scalar r_d = 5.0;
    Scalar k_inter = 1.0;
    Scalar k_domain = 1.0;
    Scalar damping = 1.0;
};

/// Inter-vehicle force magnitude at separation s: -k_inter * (r_d - s) for
/// 0 < s < r_d (repulsive), zero at and beyond r_d.
Scalar f_inter(Scalar s, const CoverageParams& params);

/// Vehicle-domain force magnitude at signed distance b: k_domain * (b + r_d/2)
/// for b > -r_d/2, zero at and below. Attracts vehicles deeper into the
/// domain until they are r_d/2 inside the boundary.
Scalar f_domain(Scalar b, const CoverageParams& params);

/// Braking force -damping * v; the continuous extension of
/// f_v(|v|) * v/|v| with f_v(s) = -damping * s, well defined at rest.
Vec2 braking_force(const Vec2& v, const CoverageParams& params);

/// Potential of the inter-vehicle force: integral of f_inter from r_d to s,
/// i.e. k_inter * (r_d - s)^2 / 2 inside the support, zero beyond.
Scalar potential_inter(Scalar s, const CoverageParams& params);

/// Potential of the vehicle-domain force: integral of f_domain from -r_d/2
/// to b, i.e. k_domain * (b + r_d/2)^2 / 2 inside the support.
Scalar potential_domain(Scalar b, const CoverageParams& params);

/// Raw (unsaturated) coverage control for vehicle i: repulsion from every
/// vehicle within r_d, the vehicle-domain spring along the signed-distance
/// gradient, and braking. Throws CoincidentVehiclesError when a pairwise
/// distance underflows 1e-9.
Vec2 coverage_control(int i, std::span<const VehicleState> states,
                      const PolygonDomain& domain, Scalar t,
                      const CoverageParams& params);

/// Kinetic plus artificial potential energy,
///   Phi = 1/2 sum_i (|v_i|^2 + sum_{j != i} V_I(|p_i - p_j|) + 2 V_h(b_i)).
/// Non-negative; zero exactly on resting r_d-subcovers.
Scalar lyapunov_energy(std::span<const VehicleState> states,
                       const PolygonDomain& domain, Scalar t,
                       const CoverageParams& params);

/// Desired-spacing heuristic sqrt(area / n): each vehicle covers roughly the
/// same square area.
Scalar r_d_heuristic(Scalar area, int n);

}  // namespace covsim
