// Tour construction over the roadmap: epsilon-constrained discrete solve via
// a GTSP reduction, geometric route recovery, a greedy baseline, and the
// Pareto / refinement sweep harnesses.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwelltour/graph.hpp"
#include "dwelltour/gtsp.hpp"
#include "dwelltour/mission.hpp"
#include "dwelltour/sampling.hpp"

namespace dwelltour {

/// The discrete problem has no node reachable within epsilon (or none for
/// the forced target). `nearest_start_time` tells how far epsilon would have
/// to move for the instance to become feasible.
class DiscreteInfeasibleError : public std::runtime_error {
public:
    explicit DiscreteInfeasibleError(double nearest_start_time, const std::string& detail = "")
        : std::runtime_error("Discrete Approximation Infeasible" +
                             (detail.empty() ? "" : ": " + detail) +
                             " (nearest reachable start time " +
                             std::to_string(nearest_start_time) + " s)"),
          nearest_start_time_(nearest_start_time) {}
    [[nodiscard]] double nearest_start_time() const { return nearest_start_time_; }

private:
    double nearest_start_time_;
};

class MissionInfeasibleError : public std::runtime_error {
public:
    explicit MissionInfeasibleError(std::vector<Finding> findings)
        : std::runtime_error(compose(findings)), findings_(std::move(findings)) {}
    [[nodiscard]] const std::vector<Finding>& findings() const { return findings_; }

private:
    static std::string compose(const std::vector<Finding>& findings);
    std::vector<Finding> findings_;
};

/// Some target's dwell set received no samples at the requested spacing.
class EmptySamplingError : public std::runtime_error {
public:
    explicit EmptySamplingError(std::vector<std::string> target_ids)
        : std::runtime_error(compose(target_ids)), target_ids_(std::move(target_ids)) {}
    [[nodiscard]] const std::vector<std::string>& target_ids() const { return target_ids_; }

private:
    static std::string compose(const std::vector<std::string>& ids);
    std::vector<std::string> target_ids_;
};

struct Policy {
    enum class Kind { Auto, Target, BestOfAll };
    Kind kind = Kind::Auto;
    int target_index = -1;  // for Kind::Target

    static Policy automatic() { return {}; }
    static Policy target(int index) { return {Kind::Target, index}; }
    static Policy best_of_all() { return {Kind::BestOfAll, -1}; }
};

struct SolveOptions {
    SolveMode mode = SolveMode::Heuristic;
    Effort effort = Effort::Default;
    uint64_t seed = 0;
};

struct DiscreteSolution {
    std::vector<int> sequence;   // one node id per target, first node's target = anchor
    double initial_time = 0.0;   // start arc to sequence.front()
    double closed_time = 0.0;    // cyclic augmented cost
    int anchor_target = -1;      // the target the tour is permuted to start at
    bool equivalence = false;    // whether an exactness condition held for the anchor
};

struct LegInfo {
    int from_node = -1;
    int to_node = -1;
    double dubins_seconds = 0.0;
    double dwell_seconds = 0.0;
};

struct PlanResult {
    DiscreteSolution discrete;
    std::vector<Configuration> initial_maneuver;  // start -> first node
    std::vector<Configuration> closed_route;      // dwell circles + legs, closed at v1
    std::vector<LegInfo> per_leg;
};

/// Node ids reachable from the start within epsilon (closed inequality).
std::vector<int> build_inl(const RoadmapGraph& g, double epsilon);

struct InlSelection {
    int target = -1;
    std::vector<int> inl_star;
    bool equivalence = false;
};

/// Anchor-target choice. Auto prefers a target whose node set lies entirely
/// inside the reachable set, then a target owning the whole reachable set,
/// then the largest intersection (ties to the lowest index).
InlSelection select_inl_star(const std::vector<int>& inl, const RoadmapGraph& g, Policy policy);

DiscreteSolution solve_discrete(const RoadmapGraph& g, double epsilon, Policy policy,
                                const SolveOptions& opt);

/// Cyclic augmented cost of a one-node-per-target sequence. A single-node
/// sequence costs its dwell time.
double tour_cost(const RoadmapGraph& g, const std::vector<int>& sequence);

PlanResult recover_route(const RoadmapGraph& g, const DiscreteSolution& solution, double step);

/// Sampled roadmap ready for repeated solves at different epsilon.
struct Pipeline {
    Mission mission;
    std::vector<VisibilityRegion> regions;
    RoadmapGraph graph;
    std::vector<int> per_target_counts;
};

/// Regions + sampling + graph; throws MissionInfeasibleError /
/// EmptySamplingError when the mission or its discretization is unusable.
Pipeline prepare_pipeline(const Mission& m, const SpacingParams& sp);

PlanResult plan(const Mission& m, const SpacingParams& sp, double epsilon, Policy policy,
                const SolveOptions& opt, double step = 25.0);

/// Incremental baseline: hop to the nearest unvisited target's node by pure
/// Dubins time, ignoring dwell costs and the epsilon constraint.
PlanResult greedy_plan(const Mission& m, const SpacingParams& sp, double step = 25.0);
DiscreteSolution greedy_discrete(const RoadmapGraph& g);

struct ParetoPoint {
    double epsilon = 0.0;
    std::optional<double> initial_time;
    std::optional<double> closed_time;           // raw per-epsilon result
    std::optional<double> closed_time_envelope;  // min over runs with initial <= epsilon
};

/// Runs the solver per epsilon and post-processes the non-increasing
/// envelope by reusing every recorded run.
std::vector<ParetoPoint> pareto_sweep(const Pipeline& pipeline,
                                      const std::vector<double>& epsilons, Policy policy,
                                      const SolveOptions& opt);
std::vector<ParetoPoint> pareto_sweep(const Mission& m, const SpacingParams& sp,
                                      const std::vector<double>& epsilons, Policy policy,
                                      const SolveOptions& opt);

struct ConvergencePoint {
    SpacingParams spacing;
    std::optional<double> closed_time;
    std::optional<double> relative_error;  // vs. reference, when supplied
};

std::vector<ConvergencePoint> convergence_sweep(const Mission& m, double epsilon,
                                                const std::vector<SpacingParams>& conditions,
                                                Policy policy, const SolveOptions& opt,
                                                std::optional<double> reference = std::nullopt);

}  // namespace dwelltour
