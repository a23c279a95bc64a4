#include "dwelltour/graph.hpp"

#include <ostream>
#include <stdexcept>

#include "dwelltour/dubins.hpp"
#include "dwelltour/parallel.hpp"

namespace dwelltour {

int RoadmapGraph::target_count() const {
    int count = 0;
    for (const auto& node : nodes) count = std::max(count, node.target_index + 1);
    return count;
}

std::vector<int> RoadmapGraph::nodes_of_target(int target) const {
    std::vector<int> ids;
    for (const auto& node : nodes)
        if (node.target_index == target) ids.push_back(node.node_id);
    return ids;
}

RoadmapGraph build_graph(std::vector<SampledNode> nodes, const UavParams& uav) {
    if (nodes.empty()) throw std::invalid_argument("build_graph: empty node set");
    RoadmapGraph g;
    g.nodes = std::move(nodes);
    g.uav = uav;
    int n = g.size();
    g.weights = Matrix(n, 0.0);
    g.start_weights.resize(static_cast<size_t>(n));

    parallel_for(n + 1, [&](int row) {
        if (row == n) {
            for (int v = 0; v < n; ++v)
                g.start_weights[static_cast<size_t>(v)] =
                    dubins_time(uav.start, g.nodes[static_cast<size_t>(v)].config,
                                uav.turn_radius, uav.speed);
            return;
        }
        const SampledNode& u = g.nodes[static_cast<size_t>(row)];
        for (int v = 0; v < n; ++v) {
            if (v == row) continue;
            g.weights(row, v) =
                u.dwell_seconds + dubins_time(u.config, g.nodes[static_cast<size_t>(v)].config,
                                              uav.turn_radius, uav.speed);
        }
    });
    return g;
}

double edge_weight(const RoadmapGraph& g, int u, int v) {
    if (v < 0 || v >= g.size()) throw std::out_of_range("edge_weight: bad destination");
    if (u == kStartNode) return g.start_weights[static_cast<size_t>(v)];
    if (u < 0 || u >= g.size()) throw std::out_of_range("edge_weight: bad source");
    if (u == v) throw std::out_of_range("edge_weight: u == v");
    return g.weights(u, v);
}

void dump_graph_csv(const RoadmapGraph& g, std::ostream& out) {
    out << "from\\to";
    for (const auto& node : g.nodes) out << ',' << node.node_id;
    out << '\n';
    out << "start";
    for (double w : g.start_weights) out << ',' << w;
    out << '\n';
    for (int u = 0; u < g.size(); ++u) {
        out << g.nodes[static_cast<size_t>(u)].node_id;
        for (int v = 0; v < g.size(); ++v) out << ',' << (u == v ? 0.0 : g.weights(u, v));
        out << '\n';
    }
}

}  // namespace dwelltour
