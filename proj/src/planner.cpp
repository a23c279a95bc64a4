#include "dwelltour/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "dwelltour/dubins.hpp"

namespace dwelltour {

std::string MissionInfeasibleError::compose(const std::vector<Finding>& findings) {
    std::string msg = "mission infeasible:";
    for (const auto& f : findings) msg += " [" + f.target_id + "] " + f.message;
    return msg;
}

std::string EmptySamplingError::compose(const std::vector<std::string>& ids) {
    std::string msg = "sampling produced no nodes for target(s):";
    for (const auto& id : ids) msg += " " + id;
    return msg;
}

std::vector<int> build_inl(const RoadmapGraph& g, double epsilon) {
    std::vector<int> inl;
    for (int v = 0; v < g.size(); ++v)
        if (g.start_weights[static_cast<size_t>(v)] <= epsilon) inl.push_back(v);
    return inl;
}

InlSelection select_inl_star(const std::vector<int>& inl, const RoadmapGraph& g, Policy policy) {
    if (inl.empty()) throw std::invalid_argument("select_inl_star: empty reachable set");
    int m = g.target_count();

    std::vector<int> inl_count(static_cast<size_t>(m), 0);
    for (int v : inl) ++inl_count[static_cast<size_t>(g.nodes[static_cast<size_t>(v)].target_index)];
    std::vector<int> total_count(static_cast<size_t>(m), 0);
    for (const auto& node : g.nodes) ++total_count[static_cast<size_t>(node.target_index)];

    auto star_of = [&](int target) {
        std::vector<int> star;
        for (int v : inl)
            if (g.nodes[static_cast<size_t>(v)].target_index == target) star.push_back(v);
        return star;
    };
    auto condition_holds = [&](int target) {
        bool whole_target_reachable =
            inl_count[static_cast<size_t>(target)] == total_count[static_cast<size_t>(target)];
        bool inl_single_target =
            inl_count[static_cast<size_t>(target)] == static_cast<int>(inl.size());
        return whole_target_reachable || inl_single_target;
    };

    if (policy.kind == Policy::Kind::Target) {
        if (policy.target_index < 0 || policy.target_index >= m)
            throw std::invalid_argument("select_inl_star: target index out of range");
        return {policy.target_index, star_of(policy.target_index),
                condition_holds(policy.target_index) &&
                    inl_count[static_cast<size_t>(policy.target_index)] > 0};
    }

    // Auto: prefer a target fully inside the reachable set, then a target
    // owning the whole set, then the largest intersection.
    for (int j = 0; j < m; ++j)
        if (inl_count[static_cast<size_t>(j)] == total_count[static_cast<size_t>(j)] &&
            inl_count[static_cast<size_t>(j)] > 0)
            return {j, star_of(j), true};
    for (int j = 0; j < m; ++j)
        if (inl_count[static_cast<size_t>(j)] == static_cast<int>(inl.size()))
            return {j, star_of(j), true};
    int best = 0;
    for (int j = 1; j < m; ++j)
        if (inl_count[static_cast<size_t>(j)] > inl_count[static_cast<size_t>(best)]) best = j;
    return {best, star_of(best), false};
}

namespace {

double min_start_weight(const RoadmapGraph& g) {
    return *std::min_element(g.start_weights.begin(), g.start_weights.end());
}

// GTSP over the subgraph that keeps every node except the anchor target's
// nodes outside inl_star. Returns the solution in global node ids, permuted
// so the anchor target comes first.
DiscreteSolution solve_for_anchor(const RoadmapGraph& g, const std::vector<int>& inl_star,
                                  int anchor, bool equivalence, const SolveOptions& opt) {
    int m = g.target_count();
    std::set<int> star(inl_star.begin(), inl_star.end());

    std::vector<int> keep;
    for (const auto& node : g.nodes) {
        if (node.target_index == anchor && !star.count(node.node_id)) continue;
        keep.push_back(node.node_id);
    }

    DiscreteSolution sol;
    sol.anchor_target = anchor;
    sol.equivalence = equivalence;

    if (m == 1) {
        // The closed tour is the dwell loop alone; pick the cheapest dwell.
        int best = inl_star.front();
        for (int v : inl_star) {
            double dv = g.nodes[static_cast<size_t>(v)].dwell_seconds;
            double db = g.nodes[static_cast<size_t>(best)].dwell_seconds;
            if (dv < db || (dv == db && v < best)) best = v;
        }
        sol.sequence = {best};
    } else {
        GtspInstance instance;
        int sub_n = static_cast<int>(keep.size());
        instance.weight = Matrix(sub_n, 0.0);
        for (int i = 0; i < sub_n; ++i)
            for (int j = 0; j < sub_n; ++j)
                if (i != j)
                    instance.weight(i, j) =
                        g.weights(keep[static_cast<size_t>(i)], keep[static_cast<size_t>(j)]);
        instance.clusters.assign(static_cast<size_t>(m), {});
        for (int i = 0; i < sub_n; ++i)
            instance.clusters[static_cast<size_t>(
                                  g.nodes[static_cast<size_t>(keep[static_cast<size_t>(i)])]
                                      .target_index)]
                .push_back(i);

        GtspTour tour = solve_gtsp(instance, opt.mode, opt.seed, opt.effort);
        sol.sequence.reserve(tour.node_sequence.size());
        for (int sub : tour.node_sequence) sol.sequence.push_back(keep[static_cast<size_t>(sub)]);
        auto first = std::find_if(sol.sequence.begin(), sol.sequence.end(), [&](int v) {
            return g.nodes[static_cast<size_t>(v)].target_index == anchor;
        });
        std::rotate(sol.sequence.begin(), first, sol.sequence.end());
    }

    sol.initial_time = g.start_weights[static_cast<size_t>(sol.sequence.front())];
    sol.closed_time = tour_cost(g, sol.sequence);
    return sol;
}

}  // namespace

DiscreteSolution solve_discrete(const RoadmapGraph& g, double epsilon, Policy policy,
                                const SolveOptions& opt) {
    if (epsilon < 0.0) throw std::invalid_argument("solve_discrete: epsilon must be >= 0");
    std::vector<int> inl = build_inl(g, epsilon);
    if (inl.empty()) throw DiscreteInfeasibleError(min_start_weight(g));

    if (policy.kind == Policy::Kind::BestOfAll) {
        int m = g.target_count();
        std::optional<DiscreteSolution> best;
        for (int j = 0; j < m; ++j) {
            InlSelection sel = select_inl_star(inl, g, Policy::target(j));
            if (sel.inl_star.empty()) continue;
            DiscreteSolution cand = solve_for_anchor(g, sel.inl_star, j, sel.equivalence, opt);
            if (!best || cand.closed_time < best->closed_time) best = std::move(cand);
        }
        if (!best) throw DiscreteInfeasibleError(min_start_weight(g));
        return *best;
    }

    InlSelection sel = select_inl_star(inl, g, policy);
    if (sel.inl_star.empty()) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& node : g.nodes)
            if (node.target_index == sel.target)
                nearest = std::min(nearest, g.start_weights[static_cast<size_t>(node.node_id)]);
        throw DiscreteInfeasibleError(nearest, "no reachable node for the requested target");
    }
    return solve_for_anchor(g, sel.inl_star, sel.target, sel.equivalence, opt);
}

double tour_cost(const RoadmapGraph& g, const std::vector<int>& sequence) {
    if (sequence.empty()) throw std::invalid_argument("tour_cost: empty sequence");
    std::set<int> seen;
    for (int v : sequence) {
        if (v < 0 || v >= g.size()) throw std::out_of_range("tour_cost: bad node id");
        if (!seen.insert(g.nodes[static_cast<size_t>(v)].target_index).second)
            throw std::invalid_argument("tour_cost: duplicate target in sequence");
    }
    if (sequence.size() == 1)
        return g.nodes[static_cast<size_t>(sequence[0])].dwell_seconds;
    double cost = 0.0;
    for (size_t k = 0; k < sequence.size(); ++k)
        cost += g.weights(sequence[k], sequence[(k + 1) % sequence.size()]);
    return cost;
}

namespace {

void append_polyline(std::vector<Configuration>& out, const std::vector<Configuration>& piece) {
    for (const auto& c : piece) {
        if (!out.empty() && approx_same(out.back(), c)) continue;
        out.push_back(c);
    }
}

std::vector<Configuration> dwell_polyline(const DwellLoop& loop, const Configuration& start,
                                          double step) {
    if (loop.kind == DwellKind::NONE || loop.loops == 0) return {start};
    double total = kTwoPi * loop.radius * loop.loops;
    int n = std::max(8, static_cast<int>(std::ceil(total / step - 1e-9)));
    std::vector<Configuration> points;
    points.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        points.push_back(dwell_loop_point(loop, start, static_cast<double>(k) / n));
    return points;
}

}  // namespace

PlanResult recover_route(const RoadmapGraph& g, const DiscreteSolution& solution, double step) {
    if (step <= 0.0) throw std::invalid_argument("recover_route: step must be > 0");
    PlanResult result;
    result.discrete = solution;

    const auto& seq = solution.sequence;
    const SampledNode& first = g.nodes[static_cast<size_t>(seq.front())];

    DubinsPath initial = dubins_shortest_path(g.uav.start, first.config, g.uav.turn_radius);
    result.initial_maneuver = sample_path_points(initial, g.uav.start, step);

    for (size_t k = 0; k < seq.size(); ++k) {
        const SampledNode& from = g.nodes[static_cast<size_t>(seq[k])];
        const SampledNode& to = g.nodes[static_cast<size_t>(seq[(k + 1) % seq.size()])];
        append_polyline(result.closed_route, dwell_polyline(from.loop, from.config, step));
        LegInfo leg;
        leg.from_node = from.node_id;
        leg.to_node = to.node_id;
        leg.dwell_seconds = from.dwell_seconds;
        if (seq.size() > 1) {
            DubinsPath path = dubins_shortest_path(from.config, to.config, g.uav.turn_radius);
            leg.dubins_seconds = path.total_length / g.uav.speed;
            append_polyline(result.closed_route, sample_path_points(path, from.config, step));
        }
        result.per_leg.push_back(leg);
    }
    if (result.closed_route.empty()) result.closed_route.push_back(first.config);
    return result;
}

Pipeline prepare_pipeline(const Mission& m, const SpacingParams& sp) {
    std::vector<Finding> findings = validate_mission(m);
    if (!findings.empty()) throw MissionInfeasibleError(std::move(findings));

    Pipeline pipeline;
    pipeline.mission = m;
    for (const auto& t : m.targets)
        pipeline.regions.push_back(build_visibility_region(t, m.uav.altitude));

    SampleResult samples = sample_mission(m, sp);
    if (!samples.empty_targets.empty())
        throw EmptySamplingError(std::move(samples.empty_targets));
    pipeline.per_target_counts = std::move(samples.per_target_counts);
    pipeline.graph = build_graph(std::move(samples.nodes), m.uav);
    return pipeline;
}

PlanResult plan(const Mission& m, const SpacingParams& sp, double epsilon, Policy policy,
                const SolveOptions& opt, double step) {
    Pipeline pipeline = prepare_pipeline(m, sp);
    DiscreteSolution sol = solve_discrete(pipeline.graph, epsilon, policy, opt);
    return recover_route(pipeline.graph, sol, step);
}

DiscreteSolution greedy_discrete(const RoadmapGraph& g) {
    int m = g.target_count();
    std::vector<char> visited(static_cast<size_t>(m), 0);
    DiscreteSolution sol;

    int current_node = kStartNode;
    for (int step = 0; step < m; ++step) {
        int best = -1;
        double best_time = std::numeric_limits<double>::infinity();
        for (const auto& node : g.nodes) {
            if (visited[static_cast<size_t>(node.target_index)]) continue;
            // pure Dubins time, no dwell term
            double time = current_node == kStartNode
                              ? g.start_weights[static_cast<size_t>(node.node_id)]
                              : g.weights(current_node, node.node_id) -
                                    g.nodes[static_cast<size_t>(current_node)].dwell_seconds;
            if (time < best_time) {
                best_time = time;
                best = node.node_id;
            }
        }
        sol.sequence.push_back(best);
        visited[static_cast<size_t>(g.nodes[static_cast<size_t>(best)].target_index)] = 1;
        current_node = best;
    }
    sol.anchor_target = g.nodes[static_cast<size_t>(sol.sequence.front())].target_index;
    sol.initial_time = g.start_weights[static_cast<size_t>(sol.sequence.front())];
    sol.closed_time = tour_cost(g, sol.sequence);
    return sol;
}

PlanResult greedy_plan(const Mission& m, const SpacingParams& sp, double step) {
    Pipeline pipeline = prepare_pipeline(m, sp);
    DiscreteSolution sol = greedy_discrete(pipeline.graph);
    return recover_route(pipeline.graph, sol, step);
}

std::vector<ParetoPoint> pareto_sweep(const Pipeline& pipeline,
                                      const std::vector<double>& epsilons, Policy policy,
                                      const SolveOptions& opt) {
    if (!std::is_sorted(epsilons.begin(), epsilons.end()))
        throw std::invalid_argument("pareto_sweep: epsilons must be sorted ascending");

    std::vector<ParetoPoint> points;
    points.reserve(epsilons.size());
    for (double eps : epsilons) {
        ParetoPoint point;
        point.epsilon = eps;
        try {
            DiscreteSolution sol = solve_discrete(pipeline.graph, eps, policy, opt);
            point.initial_time = sol.initial_time;
            point.closed_time = sol.closed_time;
        } catch (const DiscreteInfeasibleError&) {
            // recorded as a gap point
        }
        points.push_back(point);
    }
    // Envelope: cheapest recorded run whose initial maneuver fits each epsilon.
    for (auto& point : points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& other : points)
            if (other.initial_time && *other.initial_time <= point.epsilon && other.closed_time)
                best = std::min(best, *other.closed_time);
        if (std::isfinite(best)) point.closed_time_envelope = best;
    }
    return points;
}

std::vector<ParetoPoint> pareto_sweep(const Mission& m, const SpacingParams& sp,
                                      const std::vector<double>& epsilons, Policy policy,
                                      const SolveOptions& opt) {
    return pareto_sweep(prepare_pipeline(m, sp), epsilons, policy, opt);
}

std::vector<ConvergencePoint> convergence_sweep(const Mission& m, double epsilon,
                                                const std::vector<SpacingParams>& conditions,
                                                Policy policy, const SolveOptions& opt,
                                                std::optional<double> reference) {
    std::vector<ConvergencePoint> points;
    points.reserve(conditions.size());
    for (const auto& sp : conditions) {
        ConvergencePoint point;
        point.spacing = sp;
        try {
            Pipeline pipeline = prepare_pipeline(m, sp);
            DiscreteSolution sol = solve_discrete(pipeline.graph, epsilon, policy, opt);
            point.closed_time = sol.closed_time;
            if (reference) point.relative_error = (sol.closed_time - *reference) / *reference;
        } catch (const DiscreteInfeasibleError&) {
        } catch (const EmptySamplingError&) {
        }
        points.push_back(point);
    }
    return points;
}

}  // namespace dwelltour
