#include "covsim/scenario.hpp"

#include "covsim/format.hpp"
#include "covsim/potential.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

namespace covsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

Scalar parse_real(const std::string& tok, int line, const std::string& key) {
    std::size_t used = 0;
    Scalar value = 0;
    try {
        value = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "field '" + key + "': '" + tok +
                                   "' is not a number");
    }
    if (used != tok.size()) {
        throw ParseError(line, "field '" + key + "': trailing characters in '" +
                                   tok + "'");
    }
    return value;
}

int parse_int(const std::string& tok, int line, const std::string& key) {
    const Scalar v = parse_real(tok, line, key);
    const int i = static_cast<int>(std::llround(v));
    if (static_cast<Scalar>(i) != v) {
        throw ParseError(line, "field '" + key + "': expected an integer");
    }
    return i;
}

void expect_count(const std::vector<std::string>& toks, std::size_t n, int line,
                  const std::string& key) {
    if (toks.size() != n) {
        throw ParseError(line, "field '" + key + "': expected " +
                                   std::to_string(n) + " value(s), got " +
                                   std::to_string(toks.size()));
    }
}

struct PendingLayout {
    std::string kind = "line";
    LineLayout line;
    ExplicitLayout states;
};

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    ScenarioConfig cfg;
    PendingLayout layout;
    std::optional<Scalar> r_d_explicit;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(line_no, "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "domain" && section != "vehicles" &&
                section != "params") {
                throw ParseError(line_no, "unknown section '" + section + "'");
            }
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::vector<std::string> toks = tokens(value);

        if (section.empty()) {
            if (key == "name") {
                cfg.name = value;
            } else {
                throw ParseError(line_no, "unknown key '" + key +
                                              "' before any section");
            }
        } else if (section == "domain") {
            if (key == "vertex") {
                expect_count(toks, 2, line_no, key);
                cfg.domain_vertices.emplace_back(
                    parse_real(toks[0], line_no, key),
                    parse_real(toks[1], line_no, key));
            } else if (key == "velocity") {
                expect_count(toks, 2, line_no, key);
                cfg.domain_velocity = Vec2(parse_real(toks[0], line_no, key),
                                           parse_real(toks[1], line_no, key));
            } else {
                throw ParseError(line_no,
                                 "unknown key '" + key + "' in [domain]");
            }
        } else if (section == "vehicles") {
            if (key == "count") {
                expect_count(toks, 1, line_no, key);
                cfg.n_vehicles = parse_int(toks[0], line_no, key);
            } else if (key == "layout") {
                expect_count(toks, 1, line_no, key);
                if (toks[0] != "line" && toks[0] != "explicit") {
                    throw ParseError(line_no,
                                     "layout must be 'line' or 'explicit'");
                }
                layout.kind = toks[0];
            } else if (key == "line_offset") {
                expect_count(toks, 1, line_no, key);
                layout.line.offset = parse_real(toks[0], line_no, key);
            } else if (key == "line_spacing") {
                if (toks.size() == 1 && toks[0] == "auto") {
                    layout.line.spacing.reset();
                } else {
                    expect_count(toks, 1, line_no, key);
                    layout.line.spacing = parse_real(toks[0], line_no, key);
                }
            } else if (key == "line_direction") {
                if (toks.size() == 1 && toks[0] == "auto") {
                    layout.line.direction.reset();
                } else {
                    expect_count(toks, 2, line_no, key);
                    layout.line.direction =
                        Vec2(parse_real(toks[0], line_no, key),
                             parse_real(toks[1], line_no, key));
                }
            } else if (key == "state") {
                expect_count(toks, 4, line_no, key);
                VehicleState s;
                s.p = Vec2(parse_real(toks[0], line_no, key),
                           parse_real(toks[1], line_no, key));
                s.v = Vec2(parse_real(toks[2], line_no, key),
                           parse_real(toks[3], line_no, key));
                layout.states.push_back(s);
            } else {
                throw ParseError(line_no,
                                 "unknown key '" + key + "' in [vehicles]");
            }
        } else {  // params
            if (key == "r_d") {
                if (toks.size() == 1 && toks[0] == "auto") {
                    r_d_explicit.reset();
                } else {
                    expect_count(toks, 1, line_no, key);
                    r_d_explicit = parse_real(toks[0], line_no, key);
                }
            } else if (key == "mode") {
                expect_count(toks, 1, line_no, key);
                if (toks[0] == "saturated") {
                    cfg.params.mode = ControlMode::Saturated;
                } else if (toks[0] == "raw") {
                    cfg.params.mode = ControlMode::Raw;
                } else {
                    throw ParseError(line_no,
                                     "mode must be 'saturated' or 'raw'");
                }
            } else if (key == "safety") {
                expect_count(toks, 1, line_no, key);
                if (toks[0] == "on") {
                    cfg.params.safety_enabled = true;
                } else if (toks[0] == "off") {
                    cfg.params.safety_enabled = false;
                } else {
                    throw ParseError(line_no, "safety must be 'on' or 'off'");
                }
            } else {
                expect_count(toks, 1, line_no, key);
                const Scalar v = parse_real(toks[0], line_no, key);
                if (key == "dt") cfg.params.dt = v;
                else if (key == "t_end") cfg.params.t_end = v;
                else if (key == "v_max") cfg.params.v_max = v;
                else if (key == "u_max") cfg.params.u_max = v;
                else if (key == "c_r") cfg.params.c_r = v;
                else if (key == "t_safety") cfg.params.t_safety = v;
                else if (key == "k_i") cfg.params.coverage.k_inter = v;
                else if (key == "k_h") cfg.params.coverage.k_domain = v;
                else if (key == "a") cfg.params.coverage.damping = v;
                else if (key == "eps_v") cfg.params.eps_v = v;
                else {
                    throw ParseError(line_no,
                                     "unknown key '" + key + "' in [params]");
                }
            }
        }
    }

    if (layout.kind == "line") {
        cfg.layout = layout.line;
    } else {
        cfg.layout = std::move(layout.states);
    }
    cfg.r_d_auto = !r_d_explicit.has_value();
    if (r_d_explicit) cfg.params.coverage.r_d = *r_d_explicit;

    finalize(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open scenario file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

PolygonDomain make_domain(const ScenarioConfig& config) {
    return PolygonDomain(config.domain_vertices, config.domain_velocity, 0.0);
}

namespace {

// Offset axis (away from the domain) and the line axis for a layout.
struct LineFrame {
    Vec2 along;
    Vec2 away;
};

LineFrame line_frame(const ScenarioConfig& config, const LineLayout& layout) {
    if (layout.direction) {
        const Scalar norm = layout.direction->norm();
        if (norm < 1e-12) {
            throw ValidationError("line_direction must be non-zero");
        }
        const Vec2 along = *layout.direction / norm;
        return {along, Vec2(-along.y(), along.x())};
    }
    if (config.domain_velocity.norm() < 1e-12) {
        return {Vec2(1, 0), Vec2(0, 1)};
    }
    const Vec2 away = config.domain_velocity.normalized();
    return {Vec2(-away.y(), away.x()), away};
}

Scalar resolved_spacing(const ScenarioConfig& config, const LineLayout& layout,
                        const Vec2& along) {
    if (layout.spacing) return *layout.spacing;
    if (config.n_vehicles < 2) return 0.0;
    Scalar lo = kInfinity;
    Scalar hi = -kInfinity;
    for (const Vec2& v : config.domain_vertices) {
        const Scalar s = v.dot(along);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const Scalar from_extent =
        (hi - lo) / static_cast<Scalar>(config.n_vehicles - 1);
    // Keep the line itself safe: neighbours strictly beyond c_r.
    return std::max(from_extent, 1.25 * config.params.c_r);
}

}  // namespace

std::vector<VehicleState> initial_states(const ScenarioConfig& config) {
    if (const auto* states = std::get_if<ExplicitLayout>(&config.layout)) {
        return *states;
    }
    const LineLayout& layout = std::get<LineLayout>(config.layout);
    const LineFrame frame = line_frame(config, layout);
    const Scalar spacing = resolved_spacing(config, layout, frame.along);

    Scalar along_lo = kInfinity, along_hi = -kInfinity, away_lo = kInfinity;
    for (const Vec2& v : config.domain_vertices) {
        along_lo = std::min(along_lo, v.dot(frame.along));
        along_hi = std::max(along_hi, v.dot(frame.along));
        away_lo = std::min(away_lo, v.dot(frame.away));
    }
    const Scalar center_along = 0.5 * (along_lo + along_hi);
    const Scalar line_away = away_lo - layout.offset;

    std::vector<VehicleState> states(
        static_cast<std::size_t>(config.n_vehicles));
    const Scalar mid = 0.5 * static_cast<Scalar>(config.n_vehicles - 1);
    for (int k = 0; k < config.n_vehicles; ++k) {
        const Scalar s = center_along + (static_cast<Scalar>(k) - mid) * spacing;
        states[static_cast<std::size_t>(k)].p =
            s * frame.along + line_away * frame.away;
        states[static_cast<std::size_t>(k)].v = Vec2::Zero();
    }
    return states;
}

void finalize(ScenarioConfig& config) {
    if (config.n_vehicles < 1) {
        throw ValidationError("vehicle count must be >= 1 (got " +
                              std::to_string(config.n_vehicles) + ")");
    }
    PolygonDomain domain = [&] {
        try {
            return make_domain(config);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string("invalid domain: ") + e.what());
        }
    }();
    if (config.r_d_auto) {
        config.params.coverage.r_d =
            r_d_heuristic(area(domain), config.n_vehicles);
    }
    if (const auto* states = std::get_if<ExplicitLayout>(&config.layout)) {
        if (static_cast<int>(states->size()) != config.n_vehicles) {
            throw ValidationError(
                "explicit layout has " + std::to_string(states->size()) +
                " states but count = " + std::to_string(config.n_vehicles));
        }
    }
    try {
        validate(config.params);
    } catch (const SimulationError& e) {
        throw ValidationError(e.what());
    }

    const std::vector<VehicleState> states = initial_states(config);
    for (const VehicleState& s : states) {
        if (!s.p.allFinite() || !s.v.allFinite()) {
            throw ValidationError("initial state is not finite");
        }
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            const Scalar d = (states[i].p - states[j].p).norm();
            if (d <= config.params.c_r) {
                throw ValidationError(
                    "unsafe initial condition: vehicles " + std::to_string(i) +
                    " and " + std::to_string(j) + " start at distance " +
                    format_real(d, 6) + " <= c_r = " +
                    format_real(config.params.c_r, 6));
            }
        }
    }
}

bool is_builtin_scenario(const std::string& name) {
    static const std::regex pattern("^(square|triangle|arrow)([1-9][0-9]*)$");
    return std::regex_match(name, pattern);
}

ScenarioConfig builtin_scenario(const std::string& name) {
    static const std::regex pattern("^(square|triangle|arrow)([1-9][0-9]*)$");
    std::smatch match;
    if (!std::regex_match(name, match, pattern)) {
        throw ValidationError("unknown built-in scenario '" + name +
                              "' (expected square<N>, triangle<N>, arrow<N>)");
    }
    const std::string family = match[1];
    const int n = std::stoi(match[2]);

    ScenarioConfig cfg;
    cfg.name = name;
    cfg.n_vehicles = n;
    // The scenario families fix c_r, v_max, u_max, t_safety, and r_d; line
    // spacing and offset, the spring gains, and the damping are free choices.
    // These values give zero collision events with avoidance on the square
    // family, at most two on the triangle family, strictly growing counts
    // without avoidance, overshoot-rich transients, and steady r_d-covers
    // under the raw control law.
    LineLayout line;
    line.offset = 10.0;
    line.spacing = 3.2;
    cfg.layout = line;
    cfg.r_d_auto = true;
    cfg.params = SimParams{};   // c_r=2, v_max=10, u_max=3, t_safety=5, dt=0.01
    cfg.params.coverage.k_inter = 4.0;
    cfg.params.coverage.k_domain = 2.5;
    cfg.params.coverage.damping = 0.4;

    if (family == "square") {
        cfg.domain_vertices = {Vec2(0, 0), Vec2(20, 0), Vec2(20, 20),
                               Vec2(0, 20)};
    } else if (family == "triangle") {
        const Scalar side = 12.5 * std::sqrt(3.0);  // 25 sqrt(3) / 2
        cfg.domain_vertices = {Vec2(0, 0), Vec2(side, 0),
                               Vec2(0.5 * side, 0.5 * std::sqrt(3.0) * side)};
    } else {
        // Arrow-shaped domain: a dart of area exactly 225 m^2 pointing
        // along its motion. Local shape: tip (15,0), barbs (-15,+-9),
        // notch (-10,0), area 9 * (15 + 10) = 225, rotated 45 degrees.
        const Scalar c = std::sqrt(0.5);
        const auto rot = [c](Scalar x, Scalar y) {
            return Vec2((x - y) * c, (x + y) * c);
        };
        cfg.domain_vertices = {rot(15, 0), rot(-15, 9), rot(-10, 0),
                               rot(-15, -9)};
        cfg.domain_velocity = Vec2(0.3, 0.3);
        cfg.params.t_end = 90.0;
    }

    finalize(cfg);
    return cfg;
}

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
    if (is_builtin_scenario(name_or_path)) {
        return builtin_scenario(name_or_path);
    }
    return load_scenario(name_or_path);
}

std::string scenario_to_string(const ScenarioConfig& config) {
    std::ostringstream out;
    const auto real = [](Scalar v) { return format_real(v, 17); };
    out << "name = " << config.name << "\n\n";

    out << "[domain]\n";
    for (const Vec2& v : config.domain_vertices) {
        out << "vertex = " << real(v.x()) << " " << real(v.y()) << "\n";
    }
    out << "velocity = " << real(config.domain_velocity.x()) << " "
        << real(config.domain_velocity.y()) << "\n\n";

    out << "[vehicles]\n";
    out << "count = " << config.n_vehicles << "\n";
    if (const auto* line = std::get_if<LineLayout>(&config.layout)) {
        out << "layout = line\n";
        out << "line_offset = " << real(line->offset) << "\n";
        if (line->spacing) {
            out << "line_spacing = " << real(*line->spacing) << "\n";
        } else {
            out << "line_spacing = auto\n";
        }
        if (line->direction) {
            out << "line_direction = " << real(line->direction->x()) << " "
                << real(line->direction->y()) << "\n";
        } else {
            out << "line_direction = auto\n";
        }
    } else {
        out << "layout = explicit\n";
        for (const VehicleState& s : std::get<ExplicitLayout>(config.layout)) {
            out << "state = " << real(s.p.x()) << " " << real(s.p.y()) << " "
                << real(s.v.x()) << " " << real(s.v.y()) << "\n";
        }
    }
    out << "\n[params]\n";
    out << "dt = " << real(config.params.dt) << "\n";
    out << "t_end = " << real(config.params.t_end) << "\n";
    out << "v_max = " << real(config.params.v_max) << "\n";
    out << "u_max = " << real(config.params.u_max) << "\n";
    out << "c_r = " << real(config.params.c_r) << "\n";
    out << "t_safety = " << real(config.params.t_safety) << "\n";
    if (config.r_d_auto) {
        out << "r_d = auto\n";
    } else {
        out << "r_d = " << real(config.params.coverage.r_d) << "\n";
    }
    out << "k_i = " << real(config.params.coverage.k_inter) << "\n";
    out << "k_h = " << real(config.params.coverage.k_domain) << "\n";
    out << "a = " << real(config.params.coverage.damping) << "\n";
    out << "eps_v = " << real(config.params.eps_v) << "\n";
    out << "mode = "
        << (config.params.mode == ControlMode::Saturated ? "saturated" : "raw")
        << "\n";
    out << "safety = " << (config.params.safety_enabled ? "on" : "off") << "\n";
    return out.str();
}

void write_scenario(const ScenarioConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write scenario file '" + path + "'");
    }
    out << scenario_to_string(config);
}

}  // namespace covsim
