// Generalized TSP solver stack: Noon-Bean reduction to an asymmetric TSP,
// a Held-Karp exact solver, a restarted local-search heuristic, and an
// exhaustive oracle for small instances.

#pragma once

#include <cstdint>
#include <vector>

#include "dwelltour/matrix.hpp"

namespace dwelltour {

struct GtspInstance {
    Matrix weight;                          // over all nodes; diagonal unused
    std::vector<std::vector<int>> clusters; // disjoint, nonempty, cover all nodes

    [[nodiscard]] int node_count() const { return weight.n; }
    [[nodiscard]] int cluster_count() const { return static_cast<int>(clusters.size()); }
    /// Throws std::invalid_argument when the cluster family is not a partition.
    void validate() const;
};

struct AtspInstance {
    Matrix weight;
    std::vector<int> node_map;           // ATSP node -> originating GTSP node
    double penalty = 0.0;                // Noon-Bean shift constant
    double sentinel = 0.0;               // finite stand-in for +inf arcs
    std::vector<int> cluster_successor;  // sigma: next node in the cluster cycle
};

struct AtspTour {
    std::vector<int> order;  // cyclic node sequence
    double cost = 0.0;
};

struct GtspTour {
    std::vector<int> node_sequence;  // one node per cluster, cyclic order
    double cost = 0.0;
};

enum class SolveMode { Exact, Heuristic };
enum class Effort { Fast, Default, Thorough };

/// Zero-cost intra-cluster cycles, inter-cluster arcs shifted from the
/// cycle successor plus a penalty exceeding the sum of all finite
/// inter-cluster weights, and a finite sentinel on the remaining arcs.
AtspInstance noon_bean_transform(const GtspInstance& g);

/// Held-Karp dynamic program; globally optimal, lexicographically smallest
/// tour among optima (anchored at node 0). Rejects n > 15.
AtspTour solve_atsp_exact(const Matrix& w);

/// Nearest-neighbor construction from seeded starts with Or-opt (segment
/// lengths 1-3) and orientation-preserving 3-opt improvement; restart count
/// grows with effort (1/8/32). Deterministic for a fixed seed. When
/// `pass_costs` is given it records the best cost after each improvement
/// pass of the best restart. `extra_out_candidates` (indexed like the
/// matrix) widens the successor candidate lists with caller-known good arcs.
AtspTour solve_atsp_heuristic(const Matrix& w, uint64_t seed, Effort effort,
                              std::vector<double>* pass_costs = nullptr,
                              const std::vector<std::vector<int>>* extra_out_candidates = nullptr);

/// Noon-Bean transform + ATSP solve + contraction back to one node per
/// cluster. Exact mode is guarded to transformed sizes <= 15.
GtspTour solve_gtsp(const GtspInstance& g, SolveMode mode, uint64_t seed,
                    Effort effort = Effort::Default);

/// Exhaustive enumeration over node choices and cluster permutations;
/// guarded to prod(|cluster|) * (M-1)! <= 1e6.
GtspTour brute_force_gtsp(const GtspInstance& g);

/// Cyclic tour cost over the instance weights (0 for a single cluster).
double gtsp_tour_cost(const GtspInstance& g, const std::vector<int>& node_sequence);

}  // namespace dwelltour
