#include "covsim/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace covsim {

Scalar f_inter(Scalar s, const CoverageParams& params) {
    return s < params.r_d ? -params.k_inter * (params.r_d - s) : 0.0;
}

Scalar f_domain(Scalar b, const CoverageParams& params) {
    const Scalar half = 0.5 * params.r_d;
    return b > -half ? params.k_domain * (b + half) : 0.0;
}

Vec2 braking_force(const Vec2& v, const CoverageParams& params) {
    return -params.damping * v;
}

Scalar potential_inter(Scalar s, const CoverageParams& params) {
    if (s >= params.r_d) return 0.0;
    const Scalar gap = params.r_d - s;
    return 0.5 * params.k_inter * gap * gap;
}

Scalar potential_domain(Scalar b, const CoverageParams& params) {
    const Scalar depth = b + 0.5 * params.r_d;
    return depth > 0 ? 0.5 * params.k_domain * depth * depth : 0.0;
}

Vec2 coverage_control(int i, std::span<const VehicleState> states,
                      const PolygonDomain& domain, Scalar t,
                      const CoverageParams& params) {
    const std::size_t n = states.size();
    const VehicleState& self = states[static_cast<std::size_t>(i)];
    Vec2 u = Vec2::Zero();
    for (std::size_t j = 0; j < n; ++j) {
        if (static_cast<int>(j) == i) continue;
        const Vec2 sep = self.p - states[j].p;
        const Scalar dist = sep.norm();
        if (dist < 1e-9) {
            throw CoincidentVehiclesError(i, static_cast<int>(j), t);
        }
        const Scalar f = f_inter(dist, params);
        if (f != 0.0) u -= f / dist * sep;
    }
    const BoundaryProjection bp = signed_distance(domain, self.p, t);
    const Scalar fh = f_domain(bp.distance, params);
    if (fh != 0.0) u -= fh * outward_direction(domain, self.p, bp);
    u += braking_force(self.v, params);
    return u;
}

Scalar lyapunov_energy(std::span<const VehicleState> states,
                       const PolygonDomain& domain, Scalar t,
                       const CoverageParams& params) {
    const std::size_t n = states.size();
    Scalar phi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        phi += 0.5 * states[i].v.squaredNorm();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            phi += 0.5 * potential_inter((states[i].p - states[j].p).norm(),
                                         params);
        }
        phi += potential_domain(signed_distance(domain, states[i].p, t).distance,
                                params);
    }
    return phi;
}

Scalar r_d_heuristic(Scalar area, int n) {
    if (!(area > 0) || n < 1) {
        throw std::invalid_argument("r_d heuristic needs area > 0 and n >= 1");
    }
    return std::sqrt(area / static_cast<Scalar>(n));
}

}  // namespace covsim
