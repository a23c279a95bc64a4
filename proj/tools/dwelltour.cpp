// dwelltour CLI: plan tours, sweep Pareto fronts, compare against the greedy
// baseline, and run grid-refinement sweeps. Exit codes: 0 ok, 1 usage/parse,
// 2 discrete approximation infeasible, 3 mission infeasible.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dwelltour/planner.hpp"
#include "dwelltour/svg.hpp"

namespace {

using nlohmann::json;
using namespace dwelltour;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDiscreteInfeasible = 2;
constexpr int kExitMissionInfeasible = 3;

struct CommonFlags {
    std::string mission_path;
    std::vector<std::string> spacing{"condition5"};
    bool spacing_given = false;
    std::string policy = "auto";
    std::string mode = "heuristic";
    std::string effort = "default";
    uint64_t seed = 0;
    double step = 25.0;
    std::string out_path;
    std::string svg_path;
    std::string csv_path;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string fnv1a_digest(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Policy parse_policy(const std::string& text, const Mission& m) {
    if (text == "auto") return Policy::automatic();
    if (text == "best_of_all") return Policy::best_of_all();
    if (text.rfind("target:", 0) == 0) {
        std::string id = text.substr(7);
        for (size_t j = 0; j < m.targets.size(); ++j)
            if (m.targets[j].id == id) return Policy::target(static_cast<int>(j));
        throw CLI::ValidationError("--policy", "unknown target id '" + id + "'");
    }
    throw CLI::ValidationError("--policy", "expected auto, best_of_all or target:ID");
}

SolveOptions parse_solve_options(const CommonFlags& flags) {
    SolveOptions opt;
    if (flags.mode == "exact") opt.mode = SolveMode::Exact;
    else if (flags.mode == "heuristic") opt.mode = SolveMode::Heuristic;
    else throw CLI::ValidationError("--mode", "expected exact or heuristic");
    if (flags.effort == "fast") opt.effort = Effort::Fast;
    else if (flags.effort == "default") opt.effort = Effort::Default;
    else if (flags.effort == "thorough") opt.effort = Effort::Thorough;
    else throw CLI::ValidationError("--effort", "expected fast, default or thorough");
    opt.seed = flags.seed;
    return opt;
}

std::vector<double> parse_epsilons(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0;
        int count = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 || count < 1)
            throw CLI::ValidationError("--epsilons", "expected start:stop:count");
        for (int i = 0; i < count; ++i)
            values.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
        return values;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    return values;
}

std::string spacing_json(const SpacingParams& sp) {
    json j = {{"delta_r_m", sp.delta_r},
              {"delta_theta_rad", sp.delta_theta},
              {"delta_alpha_rad", sp.delta_alpha}};
    return j.dump();
}

json node_json(const RoadmapGraph& g, int node_id, const Mission& m) {
    const SampledNode& node = g.nodes[static_cast<size_t>(node_id)];
    json j = {{"node_id", node.node_id},
              {"target", m.targets[static_cast<size_t>(node.target_index)].id},
              {"x_m", node.config.position.x},
              {"y_m", node.config.position.y},
              {"heading_rad", node.config.heading}};
    json dwell;
    switch (node.loop.kind) {
        case DwellKind::NONE: dwell["kind"] = "none"; break;
        case DwellKind::ORBIT_TARGET: dwell["kind"] = "orbit_target"; break;
        case DwellKind::ORBIT_PIVOT: dwell["kind"] = "orbit_pivot"; break;
    }
    if (node.loop.kind != DwellKind::NONE) {
        dwell["center_x_m"] = node.loop.center.x;
        dwell["center_y_m"] = node.loop.center.y;
        dwell["radius_m"] = node.loop.radius;
        dwell["direction"] = node.loop.direction == OrbitDirection::CCW ? "ccw" : "cw";
        dwell["loops"] = node.loop.loops;
    }
    dwell["seconds"] = node.dwell_seconds;
    j["dwell"] = std::move(dwell);
    return j;
}

json polyline_json(const std::vector<Configuration>& points) {
    json arr = json::array();
    for (const auto& c : points)
        arr.push_back({c.position.x, c.position.y, c.heading});
    return arr;
}

struct SummaryPrinter {
    std::string command;
    std::string mission_digest;
    json details = json::object();
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void print(const std::string& outcome) const {
        json summary = {{"command", command},
                        {"mission_digest", mission_digest},
                        {"outcome", outcome}};
        for (auto it = details.begin(); it != details.end(); ++it) summary[it.key()] = it.value();
        summary["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::cout << summary.dump() << '\n';
    }
};

int run_guarded(SummaryPrinter& summary, const std::function<int()>& body) {
    try {
        return body();
    } catch (const MissionParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        summary.print("parse-error");
        return kExitUsage;
    } catch (const MissionInfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        summary.print("infeasible-mission");
        return kExitMissionInfeasible;
    } catch (const EmptySamplingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        summary.print("infeasible-discrete");
        return kExitDiscreteInfeasible;
    } catch (const DiscreteInfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        summary.details["nearest_start_time_s"] = e.nearest_start_time();
        summary.print("infeasible-discrete");
        return kExitDiscreteInfeasible;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

json counts_json(const Mission& m, const std::vector<int>& counts) {
    json j = json::object();
    for (size_t i = 0; i < counts.size(); ++i)
        j[m.targets[i].id] = counts[i];
    return j;
}

int cmd_plan(const CommonFlags& flags, double epsilon) {
    SummaryPrinter summary;
    summary.command = "plan";
    return run_guarded(summary, [&]() -> int {
        std::string doc = read_file(flags.mission_path);
        summary.mission_digest = fnv1a_digest(doc);
        Mission m = parse_mission(doc);
        SpacingParams sp = parse_spacing(flags.spacing.front());
        Policy policy = parse_policy(flags.policy, m);
        SolveOptions opt = parse_solve_options(flags);
        summary.details["epsilon_s"] = epsilon;
        summary.details["spacing"] = flags.spacing.front();
        summary.details["seed"] = flags.seed;

        Pipeline pipeline = prepare_pipeline(m, sp);
        summary.details["node_counts"] = counts_json(m, pipeline.per_target_counts);
        DiscreteSolution sol = solve_discrete(pipeline.graph, epsilon, policy, opt);
        PlanResult result = recover_route(pipeline.graph, sol, flags.step);

        summary.details["initial_time_s"] = sol.initial_time;
        summary.details["closed_time_s"] = sol.closed_time;

        json out = {{"mission_digest", summary.mission_digest},
                    {"epsilon_s", epsilon},
                    {"spacing", json::parse(spacing_json(sp))},
                    {"policy", flags.policy},
                    {"mode", flags.mode},
                    {"effort", flags.effort},
                    {"seed", flags.seed},
                    {"initial_time_s", sol.initial_time},
                    {"closed_time_s", sol.closed_time},
                    {"anchor_target", m.targets[static_cast<size_t>(sol.anchor_target)].id},
                    {"equivalence", sol.equivalence},
                    {"node_counts", counts_json(m, pipeline.per_target_counts)}};
        json seq = json::array();
        for (int v : sol.sequence) seq.push_back(node_json(pipeline.graph, v, m));
        out["sequence"] = std::move(seq);
        json legs = json::array();
        for (const auto& leg : result.per_leg)
            legs.push_back({{"from", leg.from_node},
                            {"to", leg.to_node},
                            {"dubins_s", leg.dubins_seconds},
                            {"dwell_s", leg.dwell_seconds}});
        out["per_leg"] = std::move(legs);
        out["initial_maneuver"] = polyline_json(result.initial_maneuver);
        out["closed_route"] = polyline_json(result.closed_route);

        if (!flags.out_path.empty()) write_file(flags.out_path, out.dump(2) + "\n");
        if (!flags.svg_path.empty())
            write_file(flags.svg_path, route_svg(m, pipeline.regions, pipeline.graph, result));
        summary.print("ok");
        return kExitOk;
    });
}

int cmd_pareto(const CommonFlags& flags, const std::string& epsilons_text) {
    SummaryPrinter summary;
    summary.command = "pareto";
    return run_guarded(summary, [&]() -> int {
        std::string doc = read_file(flags.mission_path);
        summary.mission_digest = fnv1a_digest(doc);
        Mission m = parse_mission(doc);
        Policy policy = parse_policy(flags.policy, m);
        SolveOptions opt = parse_solve_options(flags);
        summary.details["seed"] = flags.seed;

        std::ostringstream csv;
        csv.precision(10);
        bool multi = flags.spacing.size() > 1;
        if (multi) csv << "spacing,";
        csv << "epsilon,initial_time,closed_time_raw,closed_time_envelope\n";

        std::vector<LabeledSeries> fronts;
        bool any_feasible = false;
        for (const auto& spacing_text : flags.spacing) {
            SpacingParams sp = parse_spacing(spacing_text);
            Pipeline pipeline = prepare_pipeline(m, sp);
            std::vector<double> epsilons;
            if (epsilons_text.empty()) {
                // default grid: 0 to the largest start weight, 64 points
                double max_start = *std::max_element(pipeline.graph.start_weights.begin(),
                                                     pipeline.graph.start_weights.end());
                for (int i = 0; i < 64; ++i) epsilons.push_back(max_start * i / 63.0);
            } else {
                epsilons = parse_epsilons(epsilons_text);
            }
            std::vector<ParetoPoint> points = pareto_sweep(pipeline, epsilons, policy, opt);
            LabeledSeries series;
            series.label = spacing_text;
            for (const auto& p : points) {
                if (multi) csv << spacing_text << ',';
                csv << p.epsilon << ',';
                if (p.initial_time) csv << *p.initial_time;
                csv << ',';
                if (p.closed_time) csv << *p.closed_time;
                csv << ',';
                if (p.closed_time_envelope) {
                    csv << *p.closed_time_envelope;
                    series.points.emplace_back(p.epsilon, *p.closed_time_envelope);
                    any_feasible = true;
                }
                csv << '\n';
            }
            fronts.push_back(std::move(series));
        }
        if (!flags.csv_path.empty()) write_file(flags.csv_path, csv.str());
        if (!flags.svg_path.empty())
            write_file(flags.svg_path, chart_svg("trade-off front", "epsilon (s)",
                                                 "closed trajectory time (s)", fronts, true));
        summary.details["curves"] = flags.spacing.size();
        if (!any_feasible) {
            summary.print("infeasible-discrete");
            return kExitDiscreteInfeasible;
        }
        summary.print("ok");
        return kExitOk;
    });
}

int cmd_compare_greedy(const CommonFlags& flags, const std::string& loops_text,
                       const std::string& epsilons_text) {
    SummaryPrinter summary;
    summary.command = "compare-greedy";
    return run_guarded(summary, [&]() -> int {
        std::string doc = read_file(flags.mission_path);
        summary.mission_digest = fnv1a_digest(doc);
        Mission base = parse_mission(doc);
        Policy policy = parse_policy(flags.policy, base);
        SolveOptions opt = parse_solve_options(flags);
        SpacingParams sp = parse_spacing(flags.spacing.front());

        std::vector<int> taus;
        {
            std::stringstream ss(loops_text);
            std::string item;
            while (std::getline(ss, item, ',')) taus.push_back(std::stoi(item));
        }
        if (taus.empty()) throw CLI::ValidationError("--loops-sweep", "expected a list of taus");

        std::ostringstream csv;
        csv.precision(10);
        csv << "tau,epsilon,greedy_closed,planner_closed,gap\n";
        std::vector<LabeledSeries> curves;
        bool any_feasible = false;

        for (int tau : taus) {
            Mission m = base;
            for (auto& t : m.targets) t.loops = tau;
            Pipeline pipeline = prepare_pipeline(m, sp);
            double greedy_closed = greedy_discrete(pipeline.graph).closed_time;

            std::vector<double> epsilons;
            if (epsilons_text.empty()) {
                double max_start = *std::max_element(pipeline.graph.start_weights.begin(),
                                                     pipeline.graph.start_weights.end());
                epsilons.push_back(max_start);
            } else {
                epsilons = parse_epsilons(epsilons_text);
            }

            LabeledSeries series;
            series.label = "tau=" + std::to_string(tau);
            for (double eps : epsilons) {
                csv << tau << ',' << eps << ',' << greedy_closed << ',';
                try {
                    DiscreteSolution sol = solve_discrete(pipeline.graph, eps, policy, opt);
                    double gap = greedy_closed - sol.closed_time;
                    csv << sol.closed_time << ',' << gap << '\n';
                    series.points.emplace_back(eps, gap);
                    any_feasible = true;
                } catch (const DiscreteInfeasibleError&) {
                    csv << ",\n";
                }
            }
            curves.push_back(std::move(series));
        }
        if (!flags.csv_path.empty()) write_file(flags.csv_path, csv.str());
        if (!flags.svg_path.empty())
            write_file(flags.svg_path, chart_svg("greedy gap", "epsilon (s)",
                                                 "greedy - planner (s)", curves, false));
        if (!any_feasible) {
            summary.print("infeasible-discrete");
            return kExitDiscreteInfeasible;
        }
        summary.print("ok");
        return kExitOk;
    });
}

int cmd_converge(const CommonFlags& flags, double epsilon, double reference) {
    SummaryPrinter summary;
    summary.command = "converge";
    return run_guarded(summary, [&]() -> int {
        std::string doc = read_file(flags.mission_path);
        summary.mission_digest = fnv1a_digest(doc);
        Mission m = parse_mission(doc);
        Policy policy = parse_policy(flags.policy, m);
        SolveOptions opt = parse_solve_options(flags);

        std::vector<SpacingParams> conditions;
        std::vector<std::string> labels;
        if (!flags.spacing_given) {
            // default: every preset, coarse to fine
            for (int c = 1; c <= spacing_preset_count(); ++c) {
                conditions.push_back(spacing_preset(c));
                labels.push_back("condition" + std::to_string(c));
            }
        } else {
            for (const auto& s : flags.spacing) {
                conditions.push_back(parse_spacing(s));
                labels.push_back(s);
            }
        }
        std::optional<double> ref;
        if (reference > 0) ref = reference;
        std::vector<ConvergencePoint> points =
            convergence_sweep(m, epsilon, conditions, policy, opt, ref);

        std::ostringstream csv;
        csv.precision(10);
        csv << "condition,closed_time,relative_error,status\n";
        LabeledSeries series;
        series.label = "closed time";
        bool any_feasible = false;
        for (size_t i = 0; i < points.size(); ++i) {
            csv << labels[i] << ',';
            if (points[i].closed_time) {
                csv << *points[i].closed_time;
                series.points.emplace_back(static_cast<double>(i + 1), *points[i].closed_time);
                any_feasible = true;
            }
            csv << ',';
            if (points[i].relative_error) csv << *points[i].relative_error;
            csv << ',' << (points[i].closed_time ? "ok" : "infeasible") << '\n';
        }
        if (!flags.csv_path.empty()) write_file(flags.csv_path, csv.str());
        if (!flags.svg_path.empty())
            write_file(flags.svg_path, chart_svg("refinement sweep", "spacing condition",
                                                 "closed trajectory time (s)", {series}, false));
        summary.details["epsilon_s"] = epsilon;
        if (!any_feasible) {
            summary.print("infeasible-discrete");
            return kExitDiscreteInfeasible;
        }
        summary.print("ok");
        return kExitOk;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dwelltour: single-UAV surveillance tour planner"};
    app.require_subcommand(1);

    CommonFlags flags;
    double epsilon = 0.0;
    std::string epsilons_text;
    std::string loops_text;
    double reference = -1.0;

    auto add_common = [&](CLI::App* cmd, bool multi_spacing) {
        cmd->add_option("--mission", flags.mission_path, "mission JSON file")->required();
        auto* spacing_opt =
            cmd->add_option("--spacing", flags.spacing,
                            "spacing preset (condition1..7) or dr=..,dtheta=..,dalpha=..")
                ->each([&](const std::string&) { flags.spacing_given = true; });
        if (!multi_spacing) spacing_opt->expected(1);
        cmd->add_option("--policy", flags.policy, "auto | best_of_all | target:ID");
        cmd->add_option("--mode", flags.mode, "exact | heuristic");
        cmd->add_option("--effort", flags.effort, "fast | default | thorough");
        cmd->add_option("--seed", flags.seed, "solver seed");
        cmd->add_option("--step", flags.step, "route sampling step (m)");
        cmd->add_option("--out", flags.out_path, "write result JSON here");
        cmd->add_option("--svg", flags.svg_path, "write an SVG plot here");
        cmd->add_option("--csv", flags.csv_path, "write a CSV table here");
    };

    CLI::App* plan_cmd = app.add_subcommand("plan", "plan a tour for one epsilon");
    add_common(plan_cmd, false);
    plan_cmd->add_option("--epsilon", epsilon, "initial maneuver bound (s)")
        ->required()
        ->check(CLI::NonNegativeNumber);

    CLI::App* pareto_cmd = app.add_subcommand("pareto", "sweep epsilon and emit the front");
    add_common(pareto_cmd, true);
    pareto_cmd->add_option("--epsilons", epsilons_text,
                           "epsilon grid start:stop:count or comma list (default: auto)");

    CLI::App* greedy_cmd =
        app.add_subcommand("compare-greedy", "compare against the greedy baseline");
    add_common(greedy_cmd, false);
    greedy_cmd->add_option("--loops-sweep", loops_text, "comma list of loop counts")->required();
    greedy_cmd->add_option("--epsilons", epsilons_text,
                           "epsilon grid for the planner (default: unconstrained)");

    CLI::App* converge_cmd =
        app.add_subcommand("converge", "closed time across spacing conditions");
    add_common(converge_cmd, true);
    converge_cmd->add_option("--epsilon", epsilon, "initial maneuver bound (s)")
        ->required()
        ->check(CLI::NonNegativeNumber);
    converge_cmd->add_option("--reference", reference, "known optimum for relative error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (plan_cmd->parsed()) return cmd_plan(flags, epsilon);
    if (pareto_cmd->parsed()) return cmd_pareto(flags, epsilons_text);
    if (greedy_cmd->parsed()) return cmd_compare_greedy(flags, loops_text, epsilons_text);
    if (converge_cmd->parsed()) return cmd_converge(flags, epsilon, reference);
    return kExitUsage;
}
