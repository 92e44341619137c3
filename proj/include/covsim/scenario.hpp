#pragma once

#include "covsim/sim.hpp"
#include "covsim/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace covsim {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("parse error at line " + std::to_string(line) +
                             ": " + message),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Vehicles evenly spaced on a straight line placed `offset` meters behind
/// the domain: below it for a static domain, opposite the motion direction
/// for a moving one. Unset spacing resolves to
/// max(domain extent along the line / (count - 1), 1.25 * c_r) so initial
/// conditions stay safe; unset direction resolves to horizontal, or
/// perpendicular to the domain velocity when the domain moves.
struct LineLayout {
    Scalar offset = 5.0;
    std::optional<Scalar> spacing;
    std::optional<Vec2> direction;
};

using ExplicitLayout = std::vector<VehicleState>;

/// A scenario: the domain polygon, the vehicle count and initial layout, and
/// the simulation parameters.
///
/// Scenario file grammar (one key per line, '#' starts a comment):
///
///   name = <string>
///   [domain]
///   vertex = <x> <y>          # repeated, counter-clockwise
///   velocity = <vx> <vy>      # optional, default 0 0
///   [vehicles]
///   count = <n>
///   layout = line | explicit  # default line
///   line_offset = <m>         # default 5
///   line_spacing = auto | <m> # default auto
///   line_direction = auto | <dx> <dy>
///   state = <px> <py> <vx> <vy>   # repeated, for layout = explicit
///   [params]
///   dt, t_end, v_max, u_max, c_r, t_safety, k_i, k_h, a, eps_v = <number>
///   r_d = auto | <m>          # default auto (sqrt(area / count))
///   mode = saturated | raw    # default saturated
///   safety = on | off         # default on
///
/// Unlisted params keys default to dt=0.01, t_end=120, v_max=10, u_max=3,
/// c_r=2, t_safety=5, k_i=k_h=1, a=1, eps_v=1e-3.
struct ScenarioConfig {
    std::string name;
    std::vector<Vec2> domain_vertices;
    Vec2 domain_velocity = Vec2::Zero();
    int n_vehicles = 0;
    std::variant<LineLayout, ExplicitLayout> layout = LineLayout{};
    bool r_d_auto = true;
    SimParams params;
};

/// Parse and fully validate a scenario file; r_d = auto is resolved through
/// r_d_heuristic. Throws ParseError or ValidationError.
ScenarioConfig load_scenario(const std::string& path);

/// Parse from the in-memory file contents (same grammar and validation).
ScenarioConfig parse_scenario(const std::string& text);

/// Write a config in the file grammar; load_scenario round-trips it
/// field-for-field (auto markers included).
void write_scenario(const ScenarioConfig& config, const std::string& path);
std::string scenario_to_string(const ScenarioConfig& config);

/// Built-in scenarios "square<N>", "triangle<N>", "arrow<N>" with the
/// standard parameter sets (c_r=2, v_max=10, u_max=3, t_safety=5): a 20 m
/// square, an equilateral triangle of side 25*sqrt(3)/2, and an arrow-shaped
/// domain of area 225 moving at (0.3, 0.3).
bool is_builtin_scenario(const std::string& name);
ScenarioConfig builtin_scenario(const std::string& name);

/// Builtin when the name matches one, otherwise loaded from the path.
ScenarioConfig resolve_scenario(const std::string& name_or_path);

/// Validate invariants and resolve auto fields in place (called by the
/// loaders; public for programmatically assembled configs).
void finalize(ScenarioConfig& config);

PolygonDomain make_domain(const ScenarioConfig& config);

/// Initial vehicle states with the layout resolved.
std::vector<VehicleState> initial_states(const ScenarioConfig& config);

}  // namespace covsim
