#include "covsim/sim.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace covsim {

const char* to_string(ControlSource source) {
    switch (source) {
        case ControlSource::Coverage: return "coverage";
        case ControlSource::Safety: return "safety";
        case ControlSource::Fallback: return "fallback";
    }
    return "unknown";
}

void validate(const SimParams& params) {
    const auto require = [](bool ok, const char* what) {
        if (!ok) throw SimulationError(std::string("invalid SimParams: ") + what);
    };
    require(params.v_max > 0 && std::isfinite(params.v_max), "v_max must be > 0");
    require(params.u_max > 0 && std::isfinite(params.u_max), "u_max must be > 0");
    require(params.dt > 0 && params.dt <= 0.05, "dt must be in (0, 0.05]");
    require(params.t_end > 0 && std::isfinite(params.t_end), "t_end must be > 0");
    require(params.c_r > 0 && std::isfinite(params.c_r), "c_r must be > 0");
    require(params.t_safety > params.dt, "t_safety must exceed dt");
    require(params.eps_v > 0, "eps_v must be > 0");
    require(params.coverage.r_d > 0 && std::isfinite(params.coverage.r_d),
            "r_d must be > 0");
    require(params.coverage.k_inter > 0 && params.coverage.k_domain > 0 &&
                params.coverage.damping > 0,
            "stiffnesses and damping must be > 0");
}

ControlDecision control_logic(int i, std::span<const VehicleState> states,
                              const PolygonDomain& domain, Scalar t,
                              const SimParams& params) {
    const std::size_t n = states.size();
    if (params.safety_enabled) {
        for (std::size_t j = 0; j < n; ++j) {
            if (static_cast<int>(j) == i) continue;
            const RelativeState z =
                relative_state(states[static_cast<std::size_t>(i)], states[j]);
            const Scalar psi = time_to_reach(z, params.c_r);
            if (psi > params.t_safety) continue;
            // First conflict in index order decides the control.
            if (psi > 0.0) {
                if (const auto u = avoid_control(z, params.safety())) {
                    return {*u, ControlSource::Safety};
                }
            }
            // Grazing contact (degenerate gradient) or already inside the
            // collision disc: flee radially from the pursuer.
            const Scalar dist = z.p.norm();
            if (dist < 1e-9) {
                throw CoincidentVehiclesError(i, static_cast<int>(j), t);
            }
            return {Vec2(params.u_max / dist * z.p), ControlSource::Fallback};
        }
    }
    Vec2 u = coverage_control(i, states, domain, t, params.coverage);
    if (params.mode == ControlMode::Saturated) {
        const Scalar norm = u.norm();
        u = norm > 0.0 ? Vec2(params.u_max / norm * u) : Vec2::Zero();
    }
    return {u, ControlSource::Coverage};
}

std::vector<ControlDecision> all_controls(std::span<const VehicleState> states,
                                          const PolygonDomain& domain, Scalar t,
                                          const SimParams& params) {
    std::vector<ControlDecision> out(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        out[i] = control_logic(static_cast<int>(i), states, domain, t, params);
    }
    return out;
}

std::vector<VehicleState> advance(std::span<const VehicleState> states,
                                  std::span<const ControlDecision> controls,
                                  const SimParams& params) {
    std::vector<VehicleState> next(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        Vec2 v = states[i].v + controls[i].u * params.dt;
        const Scalar speed = v.norm();
        if (speed > params.v_max) v *= params.v_max / speed;
        next[i].v = v;
        next[i].p = states[i].p + v * params.dt;
    }
    return next;
}

std::vector<VehicleState> step(std::span<const VehicleState> states,
                               const PolygonDomain& domain, Scalar t,
                               const SimParams& params) {
    return advance(states, all_controls(states, domain, t, params), params);
}

std::vector<CollisionEvent> detect_collision_events(const Trajectory& traj,
                                                    Scalar c_r) {
    std::vector<CollisionEvent> events;
    const int n = traj.vehicles();
    const int steps = traj.steps();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool open = false;
            std::size_t open_at = 0;
            for (int k = 0; k < steps; ++k) {
                const auto& frame = traj.states[static_cast<std::size_t>(k)];
                const Scalar dist =
                    (frame[static_cast<std::size_t>(i)].p -
                     frame[static_cast<std::size_t>(j)].p)
                        .norm();
                if (!open && dist <= c_r) {
                    open = true;
                    open_at = events.size();
                    events.push_back(
                        {i, j, traj.times[static_cast<std::size_t>(k)],
                         std::nullopt});
                } else if (open && dist > c_r) {
                    open = false;
                    events[open_at].t_end =
                        traj.times[static_cast<std::size_t>(k)];
                }
            }
        }
    }
    return events;
}

bool is_r_subcover(std::span<const VehicleState> states,
                   const PolygonDomain& domain, Scalar t, Scalar r) {
    constexpr Scalar tol = 1e-6;
    const std::size_t n = states.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((states[i].p - states[j].p).norm() < r - tol) return false;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (signed_distance(domain, states[i].p, t).distance > -0.5 * r + tol) {
            return false;
        }
    }
    return true;
}

bool is_steady(std::span<const VehicleState> states, Scalar eps_v) {
    for (const VehicleState& s : states) {
        if (s.v.norm() >= eps_v) return false;
    }
    return true;
}

Trajectory run(const PolygonDomain& domain,
               std::vector<VehicleState> initial_states,
               const SimParams& params) {
    validate(params);
    if (initial_states.empty()) {
        throw SimulationError("run needs at least one vehicle");
    }
    const int last = static_cast<int>(std::llround(params.t_end / params.dt));

    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(last) + 1);
    traj.states.reserve(static_cast<std::size_t>(last) + 1);
    traj.controls.reserve(static_cast<std::size_t>(last) + 1);
    traj.energy.reserve(static_cast<std::size_t>(last) + 1);
    traj.domain_offset.reserve(static_cast<std::size_t>(last) + 1);

    std::vector<VehicleState> states = std::move(initial_states);
    for (int k = 0; k <= last; ++k) {
        const Scalar t = static_cast<Scalar>(k) * params.dt;
        for (const VehicleState& s : states) {
            if (!s.p.allFinite() || !s.v.allFinite()) {
                throw SimulationError("non-finite vehicle state at t=" +
                                      std::to_string(t));
            }
        }
        std::vector<ControlDecision> controls =
            all_controls(states, domain, t, params);
        traj.times.push_back(t);
        traj.states.push_back(states);
        traj.energy.push_back(
            lyapunov_energy(states, domain, t, params.coverage));
        traj.domain_offset.push_back(domain.offset_at(t));
        if (k < last) {
            states = advance(states, controls, params);
        }
        traj.controls.push_back(std::move(controls));
    }
    traj.events = detect_collision_events(traj, params.c_r);
    return traj;
}

RunSummary summarize(const Trajectory& traj, const PolygonDomain& domain,
                     const SimParams& params) {
    RunSummary summary;
    summary.events = traj.events;
    summary.collision_event_count = static_cast<int>(traj.events.size());
    summary.final_energy = traj.energy.empty() ? 0.0 : traj.energy.back();
    summary.r_used = params.coverage.r_d;
    if (!traj.states.empty()) {
        const Scalar t_last = traj.times.back();
        summary.r_subcover = is_r_subcover(traj.states.back(), domain, t_last,
                                           params.coverage.r_d);
        // Walk backward while states stay steady.
        std::optional<std::size_t> first_steady;
        for (std::size_t k = traj.states.size(); k-- > 0;) {
            if (is_steady(traj.states[k], params.eps_v)) {
                first_steady = k;
            } else {
                break;
            }
        }
        if (first_steady) summary.steady_time = traj.times[*first_steady];
    }
    return summary;
}

}  // namespace covsim
