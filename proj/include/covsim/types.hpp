#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace covsim {

using Scalar = double;
using Vec2 = Eigen::Vector2<Scalar>;

inline constexpr Scalar kInfinity = std::numeric_limits<Scalar>::infinity();

/// Position and velocity of one vehicle, in meters and meters per second.
struct VehicleState {
    Vec2 p = Vec2::Zero();
    Vec2 v = Vec2::Zero();
};

/// Relative state of an evader/pursuer pair: p = p_evader - p_pursuer,
/// v = v_evader - v_pursuer.
struct RelativeState {
    Vec2 p = Vec2::Zero();
    Vec2 v = Vec2::Zero();
};

inline RelativeState relative_state(const VehicleState& evader,
                                    const VehicleState& pursuer) {
    return {evader.p - pursuer.p, evader.v - pursuer.v};
}

/// Two vehicles occupy (numerically) the same point; force directions are
/// undefined and the simulation cannot continue.
class CoincidentVehiclesError : public std::runtime_error {
  public:
    CoincidentVehiclesError(int i, int j, Scalar t)
        : std::runtime_error("vehicles " + std::to_string(i) + " and " +
                             std::to_string(j) +
                             " are coincident at t=" + std::to_string(t)),
          i_(i), j_(j) {}
    int first() const { return i_; }
    int second() const { return j_; }

  private:
    int i_;
    int j_;
};

/// Integration produced a non-finite state or another unrecoverable condition.
class SimulationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace covsim
