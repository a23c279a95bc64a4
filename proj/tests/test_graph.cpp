#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dwelltour/graph.hpp"
#include "test_support.hpp"

using namespace dwelltour;
using testsupport::Rng;

namespace {

SampledNode make_node(int id, Configuration c, int target, double dwell_seconds = 0.0,
                      double radius = 750.0) {
    SampledNode node;
    node.node_id = id;
    node.config = c;
    node.target_index = target;
    if (dwell_seconds > 0.0) {
        node.loop = DwellLoop{DwellKind::ORBIT_PIVOT, left_pivot(c, radius), radius,
                              OrbitDirection::CCW, 1};
    }
    node.dwell_seconds = dwell_seconds;
    return node;
}

UavParams uav_at(Configuration start) {
    UavParams uav;
    uav.turn_radius = 750.0;
    uav.altitude = 1000.0;
    uav.speed = 39.0;
    uav.start = start;
    return uav;
}

}  // namespace

TEST_CASE("weights are dwell plus dubins") {
    UavParams uav = uav_at(Configuration(0.0, 0.0, 0.0));
    std::vector<SampledNode> nodes;
    nodes.push_back(make_node(0, Configuration(0.0, 0.0, 0.0), 0));
    nodes.push_back(make_node(1, Configuration(1000.0, 0.0, 0.0), 1));
    RoadmapGraph g = build_graph(nodes, uav);

    // forward leg is the aligned straight
    CHECK(g.weights(0, 1) == doctest::Approx(1000.0 / 39.0).epsilon(1e-12));
    // reverse leg must fold back; recomputation is the contract
    CHECK(g.weights(1, 0) ==
          doctest::Approx(dubins_time(nodes[1].config, nodes[0].config, 750.0, 39.0)));
    // start coincides with node 0
    CHECK(g.start_weights[0] == 0.0);
    CHECK(g.start_weights[1] == doctest::Approx(1000.0 / 39.0));
}

TEST_CASE("dwell at the source raises every outgoing weight") {
    UavParams uav = uav_at(Configuration(-3000.0, 0.0, 0.0));
    double dwell = 2.0 * kPi * 750.0 / 39.0;  // one pivot loop
    std::vector<SampledNode> nodes;
    nodes.push_back(make_node(0, Configuration(0.0, 0.0, 0.0), 0, dwell));
    nodes.push_back(make_node(1, Configuration(4000.0, 100.0, 1.0), 1));
    nodes.push_back(make_node(2, Configuration(-2000.0, 900.0, 3.0), 2));
    RoadmapGraph g = build_graph(nodes, uav);

    for (int v = 1; v < 3; ++v) CHECK(g.weights(0, v) >= dwell);
    // asymmetry witness: unequal dwell makes the pair asymmetric
    CHECK(g.weights(0, 1) != g.weights(1, 0));
    // start arcs carry no dwell
    CHECK(g.start_weights[0] ==
          doctest::Approx(dubins_time(uav.start, nodes[0].config, 750.0, 39.0)));
    // lookups match recomputation
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v)
            if (u != v)
                CHECK(edge_weight(g, u, v) ==
                      doctest::Approx(nodes[static_cast<size_t>(u)].dwell_seconds +
                                      dubins_time(nodes[static_cast<size_t>(u)].config,
                                                  nodes[static_cast<size_t>(v)].config, 750.0,
                                                  39.0)));
    CHECK(edge_weight(g, kStartNode, 2) == g.start_weights[2]);
    CHECK_THROWS(edge_weight(g, 1, 1));
    CHECK_THROWS(edge_weight(g, 0, 99));
}

TEST_CASE("augmented weights keep the triangle inequality") {
    Rng rng(41);
    UavParams uav = uav_at(Configuration(0.0, 0.0, 0.0));
    std::vector<SampledNode> nodes;
    for (int i = 0; i < 24; ++i)
        nodes.push_back(make_node(i, testsupport::random_config(rng), i,
                                  rng.uniform() < 0.4 ? rng.uniform(10.0, 200.0) : 0.0));
    RoadmapGraph g = build_graph(nodes, uav);
    for (int trial = 0; trial < 5000; ++trial) {
        int u = rng.uniform_int(0, 23), v = rng.uniform_int(0, 23), w = rng.uniform_int(0, 23);
        if (u == v || v == w || u == w) continue;
        CHECK(g.weights(u, w) <= g.weights(u, v) + g.weights(v, w) +
                                     1e-9 * std::max(1.0, g.weights(u, w)));
    }
}

TEST_CASE("cycle cost decomposes into dwell plus legs") {
    Rng rng(43);
    UavParams uav = uav_at(Configuration(0.0, 0.0, 0.0));
    std::vector<SampledNode> nodes;
    for (int i = 0; i < 6; ++i)
        nodes.push_back(make_node(i, testsupport::random_config(rng), i,
                                  rng.uniform(0.0, 150.0)));
    RoadmapGraph g = build_graph(nodes, uav);

    std::vector<int> cycle{0, 3, 1, 5, 2, 4};
    double weight_sum = 0.0;
    for (size_t k = 0; k < cycle.size(); ++k)
        weight_sum += g.weights(cycle[k], cycle[(k + 1) % cycle.size()]);
    double dwell_sum = 0.0, leg_sum = 0.0;
    for (size_t k = 0; k < cycle.size(); ++k) {
        dwell_sum += nodes[static_cast<size_t>(cycle[k])].dwell_seconds;
        leg_sum += dubins_time(nodes[static_cast<size_t>(cycle[k])].config,
                               nodes[static_cast<size_t>(cycle[(k + 1) % cycle.size()])].config,
                               750.0, 39.0);
    }
    CHECK(weight_sum == doctest::Approx(dwell_sum + leg_sum).epsilon(1e-12));
}

TEST_CASE("csv dump carries the header and start row") {
    UavParams uav = uav_at(Configuration(0.0, 0.0, 0.0));
    std::vector<SampledNode> nodes;
    nodes.push_back(make_node(0, Configuration(0.0, 0.0, 0.0), 0));
    nodes.push_back(make_node(1, Configuration(1000.0, 0.0, 0.0), 1));
    RoadmapGraph g = build_graph(nodes, uav);
    std::ostringstream out;
    dump_graph_csv(g, out);
    std::string text = out.str();
    CHECK(text.rfind("from\\to,0,1\n", 0) == 0);
    CHECK(text.find("\nstart,") != std::string::npos);
}
