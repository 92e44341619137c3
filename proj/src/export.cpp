#include "covsim/export.hpp"

#include "covsim/format.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace covsim {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    return out;
}

std::string g9(Scalar v) { return format_real(v, 9); }

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out = open_or_throw(path);
    out << "t,i,p_x,p_y,v_x,v_y,u_x,u_y,source\n";
    for (int k = 0; k < traj.steps(); ++k) {
        const auto ku = static_cast<std::size_t>(k);
        for (int i = 0; i < traj.vehicles(); ++i) {
            const auto iu = static_cast<std::size_t>(i);
            const VehicleState& s = traj.states[ku][iu];
            const ControlDecision& c = traj.controls[ku][iu];
            out << g9(traj.times[ku]) << ',' << i << ',' << g9(s.p.x()) << ','
                << g9(s.p.y()) << ',' << g9(s.v.x()) << ',' << g9(s.v.y())
                << ',' << g9(c.u.x()) << ',' << g9(c.u.y()) << ','
                << to_string(c.source) << '\n';
        }
    }
}

void write_summary(const RunSummary& summary, const std::string& scenario_name,
                   int vehicles, const std::string& path) {
    std::ofstream out = open_or_throw(path);
    out << "scenario = " << scenario_name << "\n";
    out << "vehicles = " << vehicles << "\n";
    out << "collision_events = " << summary.collision_event_count << "\n";
    out << "final_energy = " << g9(summary.final_energy) << "\n";
    out << "steady_time = "
        << (summary.steady_time ? g9(*summary.steady_time) : "none") << "\n";
    out << "r_subcover = " << (summary.r_subcover ? "true" : "false") << "\n";
    out << "r = " << g9(summary.r_used) << "\n";
    for (const CollisionEvent& e : summary.events) {
        out << "event = " << e.i << " " << e.j << " " << g9(e.t_start) << " "
            << (e.t_end ? g9(*e.t_end) : "open") << "\n";
    }
}

void write_energy_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out = open_or_throw(path);
    out << "t,phi\n";
    for (int k = 0; k < traj.steps(); ++k) {
        const auto ku = static_cast<std::size_t>(k);
        out << g9(traj.times[ku]) << ',' << g9(traj.energy[ku]) << '\n';
    }
}

std::vector<std::string> write_plot_snapshots(const Trajectory& traj,
                                              const PolygonDomain& domain,
                                              const PlotOptions& options,
                                              const std::string& directory,
                                              const std::string& stem) {
    std::filesystem::create_directories(directory);
    std::vector<std::string> written;
    if (traj.steps() == 0) return written;
    const Scalar dt =
        traj.steps() > 1 ? traj.times[1] - traj.times[0] : Scalar(1);

    for (const Scalar t_req : options.times) {
        const int k_snap = std::clamp<int>(
            static_cast<int>(std::llround(t_req / dt)), 0, traj.steps() - 1);
        const auto ks = static_cast<std::size_t>(k_snap);
        const Scalar t = traj.times[ks];
        const int k_from = std::max(
            0, k_snap - static_cast<int>(std::llround(options.tail_seconds / dt)));

        const std::string path = directory + "/" + stem + "_t" +
                                 format_real(t, 9) + ".csv";
        std::ofstream out = open_or_throw(path);
        out << "kind,i,t,p_x,p_y\n";
        for (int i = 0; i < traj.vehicles(); ++i) {
            const VehicleState& s = traj.states[ks][static_cast<std::size_t>(i)];
            out << "pos," << i << ',' << g9(t) << ',' << g9(s.p.x()) << ','
                << g9(s.p.y()) << '\n';
        }
        for (int i = 0; i < traj.vehicles(); ++i) {
            for (int k = k_from; k <= k_snap; ++k) {
                const auto ku = static_cast<std::size_t>(k);
                const VehicleState& s = traj.states[ku][static_cast<std::size_t>(i)];
                out << "tail," << i << ',' << g9(traj.times[ku]) << ','
                    << g9(s.p.x()) << ',' << g9(s.p.y()) << '\n';
            }
        }
        for (int i = 0; i < domain.size(); ++i) {
            const Vec2 v = domain.vertex_at(i, t);
            out << "domain," << i << ',' << g9(t) << ',' << g9(v.x()) << ','
                << g9(v.y()) << '\n';
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace covsim
