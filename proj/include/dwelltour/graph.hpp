// Roadmap over the sampled nodes plus the start configuration. Edge weights
// are augmented travel times: dwell at the source plus the Dubins leg.

#pragma once

#include <iosfwd>
#include <vector>

#include "dwelltour/matrix.hpp"
#include "dwelltour/sampling.hpp"

namespace dwelltour {

struct RoadmapGraph {
    std::vector<SampledNode> nodes;
    UavParams uav;  // start configuration plus r/s for leg recomputation
    Matrix weights;                     // weights(u, v) = dwell(u) + dubins(u, v)
    std::vector<double> start_weights;  // dubins(v0, v); no dwell at v0

    [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
    [[nodiscard]] int target_count() const;

    /// Node ids of one target, in node order.
    [[nodiscard]] std::vector<int> nodes_of_target(int target) const;
};

/// Complete directed weight matrix over the nodes plus start arcs; rows are
/// computed in parallel.
RoadmapGraph build_graph(std::vector<SampledNode> nodes, const UavParams& uav);

/// Sentinel index addressing the start configuration in edge_weight.
inline constexpr int kStartNode = -1;

/// weights(u, v), or start_weights[v] when u == kStartNode. Throws on
/// out-of-range indices or u == v.
double edge_weight(const RoadmapGraph& g, int u, int v);

/// Debugging aid: weight matrix as CSV with a node-id header row; the first
/// data row holds the start arcs.
void dump_graph_csv(const RoadmapGraph& g, std::ostream& out);

}  // namespace dwelltour
