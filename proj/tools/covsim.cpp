// covsim command-line front end: run one scenario, sweep a scenario family
// over vehicle counts, or export a built-in scenario as a config file.

#include "covsim/export.hpp"
#include "covsim/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

using namespace covsim;

struct RunFlags {
    std::string scenario;
    std::string safety;
    std::string mode;
    double dt = -1;
    double t_end = -1;
    std::string seed_layout;
    bool emit_energy = false;
    bool emit_plots = false;
    double plot_interval = 5.0;
    double tail = -1;
    std::string out_dir = "out";
};

void apply_overrides(ScenarioConfig& cfg, const RunFlags& flags) {
    if (flags.safety == "on") cfg.params.safety_enabled = true;
    else if (flags.safety == "off") cfg.params.safety_enabled = false;
    else if (!flags.safety.empty()) {
        throw ValidationError("--safety must be on or off");
    }
    if (flags.mode == "saturated") cfg.params.mode = ControlMode::Saturated;
    else if (flags.mode == "raw") cfg.params.mode = ControlMode::Raw;
    else if (!flags.mode.empty()) {
        throw ValidationError("--mode must be saturated or raw");
    }
    if (flags.dt > 0) cfg.params.dt = flags.dt;
    if (flags.t_end > 0) cfg.params.t_end = flags.t_end;
    if (!flags.seed_layout.empty()) {
        // offset[,spacing] applied to the line layout
        LineLayout line;
        if (const auto* prev = std::get_if<LineLayout>(&cfg.layout)) {
            line = *prev;
        }
        std::istringstream in(flags.seed_layout);
        std::string tok;
        if (std::getline(in, tok, ',')) line.offset = std::stod(tok);
        if (std::getline(in, tok, ',')) line.spacing = std::stod(tok);
        cfg.layout = line;
    }
    finalize(cfg);
}

std::string run_tag(const ScenarioConfig& cfg) {
    std::string tag = cfg.name;
    if (!cfg.params.safety_enabled) tag += "_nosafety";
    if (cfg.params.mode == ControlMode::Raw) tag += "_raw";
    return tag;
}

RunSummary execute(const ScenarioConfig& cfg, const RunFlags& flags,
                   bool quiet = false) {
    const PolygonDomain domain = make_domain(cfg);
    const Trajectory traj = run(domain, initial_states(cfg), cfg.params);
    const RunSummary summary = summarize(traj, domain, cfg.params);

    std::filesystem::create_directories(flags.out_dir);
    const std::string base = flags.out_dir + "/" + run_tag(cfg);
    write_trajectory_csv(traj, base + "_trajectory.csv");
    write_summary(summary, cfg.name, cfg.n_vehicles, base + "_summary.txt");
    if (flags.emit_energy) write_energy_csv(traj, base + "_energy.csv");
    if (flags.emit_plots) {
        PlotOptions plot;
        if (flags.tail > 0) plot.tail_seconds = flags.tail;
        for (double t = 0; t <= cfg.params.t_end + 1e-9;
             t += flags.plot_interval) {
            plot.times.push_back(t);
        }
        write_plot_snapshots(traj, domain, plot, flags.out_dir,
                             run_tag(cfg) + "_snapshot");
    }

    if (!quiet) {
        std::cout << cfg.name << ": collision events = "
                  << summary.collision_event_count << ", r_subcover(r="
                  << summary.r_used << ") = "
                  << (summary.r_subcover ? "true" : "false") << ", steady at "
                  << (summary.steady_time
                          ? std::to_string(*summary.steady_time) + " s"
                          : std::string("never"))
                  << ", final energy = " << summary.final_energy << "\n";
    }
    return summary;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic multi-vehicle domain-coverage simulator"};
    app.require_subcommand(1);

    RunFlags flags;
    CLI::App* cmd_run = app.add_subcommand(
        "run", "Run one scenario (built-in name or config file path)");
    cmd_run->add_option("scenario", flags.scenario,
                        "square<N>, triangle<N>, arrow<N>, or a file path")
        ->required();
    cmd_run->add_option("--safety", flags.safety, "on|off override");
    cmd_run->add_option("--mode", flags.mode, "saturated|raw override");
    cmd_run->add_option("--dt", flags.dt, "time step override (s)");
    cmd_run->add_option("--t-end", flags.t_end, "duration override (s)");
    cmd_run->add_option("--seed-layout", flags.seed_layout,
                        "line layout override: offset[,spacing]");
    cmd_run->add_flag("--emit-energy", flags.emit_energy,
                      "write the Lyapunov energy trace");
    cmd_run->add_flag("--emit-plots", flags.emit_plots,
                      "write position snapshots with history tails");
    cmd_run->add_option("--plot-interval", flags.plot_interval,
                        "seconds between snapshots");
    cmd_run->add_option("--tail", flags.tail, "tail window override (s)");
    cmd_run->add_option("--out", flags.out_dir, "output directory");

    std::string sweep_family;
    std::vector<int> sweep_counts;
    std::string sweep_out = "out";
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "Run a scenario family over vehicle counts, safety off and on");
    cmd_sweep->add_option("family", sweep_family, "square|triangle|arrow")
        ->required();
    cmd_sweep->add_option("--n", sweep_counts, "vehicle counts")->delimiter(',');
    cmd_sweep->add_option("--out", sweep_out, "output directory");

    std::string export_name;
    std::string export_path;
    CLI::App* cmd_export = app.add_subcommand(
        "export-config", "Write a built-in scenario as a config file");
    cmd_export->add_option("scenario", export_name, "built-in name")->required();
    cmd_export->add_option("path", export_path, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_run) {
            ScenarioConfig cfg = resolve_scenario(flags.scenario);
            apply_overrides(cfg, flags);
            execute(cfg, flags);
        } else if (*cmd_sweep) {
            if (sweep_counts.empty()) {
                if (sweep_family == "square") sweep_counts = {9, 16, 25};
                else if (sweep_family == "triangle") sweep_counts = {6, 10, 15};
                else sweep_counts = {9};
            }
            RunFlags sweep_flags;
            sweep_flags.out_dir = sweep_out;
            std::cout << "N  without_avoidance  with_avoidance\n";
            for (const int n : sweep_counts) {
                int events[2] = {0, 0};
                for (const bool safety_on : {false, true}) {
                    ScenarioConfig cfg =
                        builtin_scenario(sweep_family + std::to_string(n));
                    cfg.params.safety_enabled = safety_on;
                    events[safety_on ? 1 : 0] =
                        execute(cfg, sweep_flags, /*quiet=*/true)
                            .collision_event_count;
                }
                std::cout << n << "  " << events[0] << "  " << events[1]
                          << "\n";
            }
        } else if (*cmd_export) {
            write_scenario(builtin_scenario(export_name), export_path);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "simulation aborted: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
