#include "covsim/reachability.hpp"

#include <cmath>

namespace covsim {

namespace {
constexpr Scalar kDegenerateDenominator = 1e-12;
}

Scalar time_to_reach(const RelativeState& z, Scalar c_r) {
    const Scalar p2 = z.p.squaredNorm();
    const Scalar cr2 = c_r * c_r;
    if (p2 <= cr2) return 0.0;

    const Scalar v2 = z.v.squaredNorm();
    if (v2 == 0.0) return kInfinity;
    const Scalar pv = z.p.dot(z.v);
    // For pv >= 0 the smaller root is non-positive (receding or tangential
    // start outside the disc): not capturable.
    if (pv >= 0.0) return kInfinity;
    const Scalar delta = pv * pv - v2 * (p2 - cr2);
    if (delta < 0.0) return kInfinity;
    return (p2 - cr2) / (-pv + std::sqrt(delta));
}

std::optional<TtrGradients> ttr_gradients(const RelativeState& z, Scalar c_r,
                                          Scalar psi) {
    (void)c_r;  // enters through psi
    const Scalar denom = z.v.squaredNorm() * psi + z.p.dot(z.v);
    if (std::abs(denom) <= kDegenerateDenominator) return std::nullopt;
    TtrGradients g;
    g.d_p = -(z.v * psi + z.p) / denom;
    g.d_v = -(z.v * (psi * psi) + z.p * psi) / denom;
    return g;
}

std::optional<Vec2> avoid_control(const RelativeState& z,
                                  const SafetyParams& params) {
    const Scalar psi = time_to_reach(z, params.c_r);
    if (!(psi > 0.0) || std::isinf(psi)) return std::nullopt;
    const auto grads = ttr_gradients(z, params.c_r, psi);
    if (!grads) return std::nullopt;
    const Scalar norm = grads->d_v.norm();
    if (norm <= 0.0) return std::nullopt;
    return Vec2(params.u_max / norm * grads->d_v);
}

std::optional<Scalar> hamiltonian_residual(const RelativeState& z,
                                           Scalar c_r) {
    const Scalar psi = time_to_reach(z, c_r);
    if (!(psi > 0.0) || std::isinf(psi)) return std::nullopt;
    const auto grads = ttr_gradients(z, c_r, psi);
    if (!grads) return std::nullopt;
    return -grads->d_p.dot(z.v) - 1.0;
}

Scalar ttr_oracle(const RelativeState& z, Scalar c_r) {
    if (z.p.norm() <= c_r) return 0.0;
    const Scalar v2 = z.v.squaredNorm();
    if (v2 == 0.0) return kInfinity;
    const Scalar t_closest = -z.p.dot(z.v) / v2;
    if (t_closest < 0.0) return kInfinity;
    const Scalar miss2 = (z.p + t_closest * z.v).squaredNorm();
    if (miss2 > c_r * c_r) return kInfinity;
    const Scalar half_chord = std::sqrt((c_r * c_r - miss2) / v2);
    return t_closest - half_chord;
}

}  // namespace covsim
