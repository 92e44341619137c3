#pragma once

#include "covsim/sim.hpp"

#include <string>
#include <vector>

namespace covsim {

/// One row per (time, vehicle): t,i,p_x,p_y,v_x,v_y,u_x,u_y,source with a
/// header row and 9 significant digits.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Run summary as key = value lines plus one 'event' line per collision
/// event (i j t_start t_end, 'open' when still open at t_end).
void write_summary(const RunSummary& summary, const std::string& scenario_name,
                   int vehicles, const std::string& path);

/// t,phi rows for the Lyapunov energy trace.
void write_energy_csv(const Trajectory& traj, const std::string& path);

struct PlotOptions {
    std::vector<Scalar> times;     ///< snapshot instants (snapped to the grid)
    Scalar tail_seconds = 5.0;     ///< history window drawn behind each vehicle
};

/// Per requested time, a kind,i,t,p_x,p_y file holding the vehicle positions
/// (kind=pos), their history tails over the configured window (kind=tail),
/// and the domain vertices at that instant (kind=domain). Returns the paths
/// written.
std::vector<std::string> write_plot_snapshots(const Trajectory& traj,
                                              const PolygonDomain& domain,
                                              const PlotOptions& options,
                                              const std::string& directory,
                                              const std::string& stem);

}  // namespace covsim
