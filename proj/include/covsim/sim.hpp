#pragma once

#include "covsim/polygon.hpp"
#include "covsim/potential.hpp"
#include "covsim/reachability.hpp"
#include "covsim/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace covsim {

/// Saturated: every control is rescaled to magnitude exactly u_max, the
/// switching controller's normalization step; a zero raw vector stays zero.
/// Raw: the coverage control is applied unsaturated, which is the law the
/// Lyapunov descent analysis covers. Safety controls are saturated in both
/// modes.
enum class ControlMode : std::uint8_t { Saturated, Raw };

enum class ControlSource : std::uint8_t { Coverage, Safety, Fallback };

const char* to_string(ControlSource source);

struct SimParams {
    Scalar v_max = 10.0;
    Scalar u_max = 3.0;
    Scalar dt = 0.01;
    Scalar t_end = 120.0;
    CoverageParams coverage;
    Scalar c_r = 2.0;
    Scalar t_safety = 5.0;
    ControlMode mode = ControlMode::Saturated;
    bool safety_enabled = true;
    Scalar eps_v = 1e-3;

    SafetyParams safety() const { return {c_r, u_max, t_safety}; }
};

/// Throws SimulationError when a SimParams invariant is violated
/// (positivity, dt <= 0.05, t_safety > dt).
void validate(const SimParams& params);

struct ControlDecision {
    Vec2 u = Vec2::Zero();
    ControlSource source = ControlSource::Coverage;
};

/// Maximal interval during which the pair (i, j), i < j, stays within the
/// collision radius. Events still open at the end of the run have no t_end.
struct CollisionEvent {
    int i = 0;
    int j = 0;
    Scalar t_start = 0;
    std::optional<Scalar> t_end;
};

/// Uniform-grid record of a run: per time step the vehicle states, applied
/// controls and their sources, the Lyapunov energy, and the domain
/// translation, plus the collision events detected over the whole run.
struct Trajectory {
    std::vector<Scalar> times;
    std::vector<std::vector<VehicleState>> states;
    std::vector<std::vector<ControlDecision>> controls;
    std::vector<Scalar> energy;
    std::vector<Vec2> domain_offset;
    std::vector<CollisionEvent> events;

    int steps() const { return static_cast<int>(times.size()); }
    int vehicles() const {
        return states.empty() ? 0 : static_cast<int>(states.front().size());
    }
};

/// Overall per-vehicle control logic: scan the other vehicles in ascending
/// index order and, for the first one whose pairwise time-to-reach is at most
/// t_safety, apply the optimal evasion control (or the radial-flee fallback
/// when the gradient is degenerate or the pair already overlaps). Otherwise
/// apply the coverage control, normalized to u_max in saturated mode.
ControlDecision control_logic(int i, std::span<const VehicleState> states,
                              const PolygonDomain& domain, Scalar t,
                              const SimParams& params);

/// All controls computed from the same time-t snapshot.
std::vector<ControlDecision> all_controls(std::span<const VehicleState> states,
                                          const PolygonDomain& domain, Scalar t,
                                          const SimParams& params);

/// Semi-implicit Euler update: v' = clip(v + u dt), p' = p + v' dt, with the
/// velocity clipped radially to v_max.
std::vector<VehicleState> advance(std::span<const VehicleState> states,
                                  std::span<const ControlDecision> controls,
                                  const SimParams& params);

/// One integration step from the time-t snapshot.
std::vector<VehicleState> step(std::span<const VehicleState> states,
                               const PolygonDomain& domain, Scalar t,
                               const SimParams& params);

/// Per-pair scan of the recorded distances: an event opens when the distance
/// drops to <= c_r and closes at the first recorded time it exceeds c_r.
std::vector<CollisionEvent> detect_collision_events(const Trajectory& traj,
                                                    Scalar c_r);

/// True iff every pairwise distance is >= r - 1e-6 and every signed distance
/// to the domain is <= -r/2 + 1e-6.
bool is_r_subcover(std::span<const VehicleState> states,
                   const PolygonDomain& domain, Scalar t, Scalar r);

/// True iff every speed is below eps_v.
bool is_steady(std::span<const VehicleState> states, Scalar eps_v = 1e-3);

/// Integrate from t = 0 to t_end on the fixed dt grid, recording every step.
/// Deterministic: no randomness anywhere. Throws CoincidentVehiclesError or
/// SimulationError (non-finite state) with diagnostics.
Trajectory run(const PolygonDomain& domain,
               std::vector<VehicleState> initial_states,
               const SimParams& params);

struct RunSummary {
    int collision_event_count = 0;
    std::vector<CollisionEvent> events;
    Scalar final_energy = 0;
    /// Earliest recorded time from which every later recorded state is
    /// steady; empty when the final state is not steady.
    std::optional<Scalar> steady_time;
    bool r_subcover = false;
    Scalar r_used = 0;
};

RunSummary summarize(const Trajectory& traj, const PolygonDomain& domain,
                     const SimParams& params);

}  // namespace covsim
