#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dwelltour/gtsp.hpp"
#include "test_support.hpp"

using namespace dwelltour;
using testsupport::Rng;

namespace {

// factorial enumeration of all cyclic tours anchored at node 0
double exhaustive_atsp(const Matrix& w) {
    int n = w.n;
    std::vector<int> perm(static_cast<size_t>(n - 1));
    std::iota(perm.begin(), perm.end(), 1);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = w(0, perm[0]);
        for (size_t i = 0; i + 1 < perm.size(); ++i) cost += w(perm[i], perm[i + 1]);
        cost += w(perm.back(), 0);
        best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// second, loop-reversed enumeration of the GTSP optimum (independent of the
// library's brute force: iterates node choices outermost, permutations inner)
double reversed_enumeration_gtsp(const GtspInstance& g) {
    int m = g.cluster_count();
    std::vector<size_t> choice(static_cast<size_t>(m), 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<int> picked(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j)
            picked[static_cast<size_t>(j)] =
                g.clusters[static_cast<size_t>(j)][choice[static_cast<size_t>(j)]];
        std::vector<int> order(static_cast<size_t>(m));
        std::iota(order.begin(), order.end(), 0);
        do {
            if (order[0] != 0) continue;  // fix rotation
            double cost = 0.0;
            for (int k = 0; k < m; ++k)
                cost += g.weight(picked[static_cast<size_t>(order[static_cast<size_t>(k)])],
                                 picked[static_cast<size_t>(
                                     order[static_cast<size_t>((k + 1) % m)])]);
            best = std::min(best, cost);
        } while (std::next_permutation(order.begin(), order.end()));
        int j = m - 1;
        for (; j >= 0; --j) {
            if (++choice[static_cast<size_t>(j)] < g.clusters[static_cast<size_t>(j)].size())
                break;
            choice[static_cast<size_t>(j)] = 0;
        }
        if (j < 0) break;
    }
    return best;
}

}  // namespace

TEST_CASE("transform of singleton clusters shifts every arc by the penalty") {
    GtspInstance g;
    g.weight = Matrix(3, 0.0);
    double vals[3][3] = {{0, 5, 9}, {4, 0, 7}, {8, 6, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g.weight(i, j) = vals[i][j];
    g.clusters = {{0}, {1}, {2}};
    AtspInstance t = noon_bean_transform(g);
    CHECK(t.penalty == doctest::Approx(1.0 + 5 + 9 + 4 + 7 + 8 + 6));
    for (int i = 0; i < 3; ++i) {
        CHECK(t.cluster_successor[static_cast<size_t>(i)] == i);
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(t.weight(i, j) == doctest::Approx(vals[i][j] + t.penalty));
    }
}

TEST_CASE("transform optimum equals the GTSP optimum shifted by M penalties") {
    GtspInstance g;
    g.weight = Matrix(4, 0.0);
    // clusters {0,1} and {2,3} with hand weights
    double vals[4][4] = {{0, 3, 8, 2}, {1, 0, 4, 9}, {7, 5, 0, 6}, {3, 4, 2, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g.weight(i, j) = vals[i][j];
    g.clusters = {{0, 1}, {2, 3}};

    AtspInstance t = noon_bean_transform(g);
    AtspTour atsp = solve_atsp_exact(t.weight);
    GtspTour gtsp = brute_force_gtsp(g);
    CHECK(atsp.cost - 2.0 * t.penalty == doctest::Approx(gtsp.cost).epsilon(1e-12));
}

TEST_CASE("optimal transformed tours walk each cluster cycle contiguously") {
    Rng rng(301);
    for (int trial = 0; trial < 25; ++trial) {
        GtspInstance g = testsupport::random_gtsp_instance(rng, 3, 2);
        AtspInstance t = noon_bean_transform(g);
        AtspTour atsp = solve_atsp_exact(t.weight);

        std::vector<int> cluster_of(static_cast<size_t>(g.node_count()));
        for (size_t j = 0; j < g.clusters.size(); ++j)
            for (int v : g.clusters[j]) cluster_of[static_cast<size_t>(v)] = static_cast<int>(j);
        // each cluster forms exactly one maximal run in the cyclic order
        int changes = 0;
        for (size_t i = 0; i < atsp.order.size(); ++i) {
            int a = cluster_of[static_cast<size_t>(atsp.order[i])];
            int b = cluster_of[static_cast<size_t>(
                atsp.order[(i + 1) % atsp.order.size()])];
            if (a != b) ++changes;
        }
        CHECK(changes == g.cluster_count());
    }
}

TEST_CASE("held-karp solves small asymmetric instances") {
    SUBCASE("uniform three-node instance") {
        Matrix w(3, 1.0);
        for (int i = 0; i < 3; ++i) w(i, i) = 0.0;
        AtspTour tour = solve_atsp_exact(w);
        CHECK(tour.cost == doctest::Approx(3.0));
        CHECK(tour.order == std::vector<int>{0, 1, 2});  // lexicographic tie-break
    }
    SUBCASE("two nodes") {
        Matrix w(2, 0.0);
        w(0, 1) = 4.0;
        w(1, 0) = 9.0;
        CHECK(solve_atsp_exact(w).cost == doctest::Approx(13.0));
    }
    SUBCASE("random four-node instances match factorial enumeration") {
        Rng rng(57);
        for (int trial = 0; trial < 200; ++trial) {
            Matrix w(4, 0.0);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (i != j) w(i, j) = rng.uniform(1.0, 100.0);
            CHECK(solve_atsp_exact(w).cost == doctest::Approx(exhaustive_atsp(w)).epsilon(1e-12));
        }
    }
    SUBCASE("size guard") {
        Matrix w(16, 1.0);
        CHECK_THROWS(solve_atsp_exact(w));
    }
}

TEST_CASE("heuristic stays close to the exact optimum on small instances") {
    Rng rng(61);
    int within = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        int n = rng.uniform_int(4, 10);
        Matrix w(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) w(i, j) = rng.uniform(1.0, 100.0);
        double exact = solve_atsp_exact(w).cost;
        AtspTour heur = solve_atsp_heuristic(w, rng.raw(), Effort::Default);
        CHECK(heur.cost >= exact - 1e-9);
        if (heur.cost <= 1.05 * exact + 1e-9) ++within;
        // structural sanity
        std::vector<int> sorted = heur.order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i) CHECK(sorted[static_cast<size_t>(i)] == i);
    }
    CHECK(within >= trials * 95 / 100);
}

TEST_CASE("heuristic on uniform weights returns n times the weight") {
    Matrix w(7, 3.5);
    for (int i = 0; i < 7; ++i) w(i, i) = 0.0;
    AtspTour tour = solve_atsp_heuristic(w, 5, Effort::Fast);
    CHECK(tour.cost == doctest::Approx(7 * 3.5));
}

TEST_CASE("heuristic recovers a planted zero-cost cycle") {
    Rng rng(71);
    int hits = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 12;
        std::vector<int> planted(static_cast<size_t>(n));
        std::iota(planted.begin(), planted.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(planted[static_cast<size_t>(i)],
                      planted[static_cast<size_t>(rng.uniform_int(0, i))]);
        Matrix w(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) w(i, j) = rng.uniform(10.0, 100.0);
        for (int i = 0; i < n; ++i)
            w(planted[static_cast<size_t>(i)], planted[static_cast<size_t>((i + 1) % n)]) = 0.0;
        AtspTour tour = solve_atsp_heuristic(w, rng.raw(), Effort::Thorough);
        if (tour.cost <= 1e-9) ++hits;
    }
    CHECK(hits >= 90);
}

TEST_CASE("improvement history is non-increasing") {
    Rng rng(83);
    Matrix w(30, 0.0);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j)
            if (i != j) w(i, j) = rng.uniform(1.0, 100.0);
    std::vector<double> history;
    solve_atsp_heuristic(w, 9, Effort::Default, &history);
    REQUIRE(!history.empty());
    for (size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1] + 1e-9);
}

TEST_CASE("gtsp solve matches brute force on random instances") {
    Rng rng(97);
    for (int trial = 0; trial < 100; ++trial) {
        GtspInstance g = testsupport::random_gtsp_instance(rng, 4, 3);
        GtspTour exact = solve_gtsp(g, SolveMode::Exact, 0);
        GtspTour oracle = brute_force_gtsp(g);
        CHECK(exact.cost == doctest::Approx(oracle.cost).epsilon(1e-12));
        // structural checks: exactly one node per cluster
        CHECK(exact.node_sequence.size() == g.clusters.size());
        std::vector<int> cluster_of(static_cast<size_t>(g.node_count()));
        for (size_t j = 0; j < g.clusters.size(); ++j)
            for (int v : g.clusters[j]) cluster_of[static_cast<size_t>(v)] = static_cast<int>(j);
        std::set<int> seen;
        for (int v : exact.node_sequence) seen.insert(cluster_of[static_cast<size_t>(v)]);
        CHECK(seen.size() == g.clusters.size());
        CHECK(exact.cost == doctest::Approx(gtsp_tour_cost(g, exact.node_sequence)));
    }
}

TEST_CASE("gtsp heuristic mode is near-optimal on small instances") {
    Rng rng(101);
    int within = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        GtspInstance g = testsupport::random_gtsp_instance(rng, 4, 3, /*metric=*/false);
        GtspTour heur = solve_gtsp(g, SolveMode::Heuristic, rng.raw());
        GtspTour oracle = brute_force_gtsp(g);
        CHECK(heur.cost >= oracle.cost - 1e-9);
        if (heur.cost <= 1.05 * oracle.cost + 1e-9) ++within;
    }
    CHECK(within >= trials * 95 / 100);
}

TEST_CASE("gtsp with singleton clusters reduces to the plain ATSP") {
    Rng rng(103);
    Matrix w = testsupport::random_metric_int_matrix(rng, 6);
    GtspInstance g;
    g.weight = w;
    for (int i = 0; i < 6; ++i) g.clusters.push_back({i});
    GtspTour tour = solve_gtsp(g, SolveMode::Exact, 0);
    CHECK(tour.cost == doctest::Approx(exhaustive_atsp(w)).epsilon(1e-12));
}

TEST_CASE("brute force oracle conventions") {
    SUBCASE("single cluster, single node") {
        GtspInstance g;
        g.weight = Matrix(1, 0.0);
        g.clusters = {{0}};
        GtspTour tour = brute_force_gtsp(g);
        CHECK(tour.cost == 0.0);
        CHECK(tour.node_sequence == std::vector<int>{0});
    }
    SUBCASE("two singleton clusters use both arcs") {
        GtspInstance g;
        g.weight = Matrix(2, 0.0);
        g.weight(0, 1) = 3.0;
        g.weight(1, 0) = 11.0;
        g.clusters = {{0}, {1}};
        CHECK(brute_force_gtsp(g).cost == doctest::Approx(14.0));
    }
    SUBCASE("three clusters of two nodes match a reversed enumeration") {
        Rng rng(107);
        for (int trial = 0; trial < 20; ++trial) {
            GtspInstance g;
            g.weight = Matrix(6, 0.0);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    if (i != j) g.weight(i, j) = rng.uniform(1.0, 50.0);
            g.clusters = {{0, 1}, {2, 3}, {4, 5}};
            CHECK(brute_force_gtsp(g).cost ==
                  doctest::Approx(reversed_enumeration_gtsp(g)).epsilon(1e-12));
        }
    }
    SUBCASE("size guard") {
        GtspInstance g;
        g.weight = Matrix(40, 1.0);
        std::vector<int> big;
        for (int i = 0; i < 20; ++i) big.push_back(i);
        std::vector<int> big2;
        for (int i = 20; i < 40; ++i) big2.push_back(i);
        // 20*20*... fine; force overflow with many clusters instead
        g.clusters.clear();
        for (int i = 0; i < 40; ++i) g.clusters.push_back({i});
        CHECK_THROWS(brute_force_gtsp(g));
    }
}

TEST_CASE("exact-mode size guard propagates through solve_gtsp") {
    GtspInstance g;
    g.weight = Matrix(18, 1.0);
    g.clusters = {{}, {}};
    for (int i = 0; i < 9; ++i) g.clusters[0].push_back(i);
    for (int i = 9; i < 18; ++i) g.clusters[1].push_back(i);
    CHECK_THROWS(solve_gtsp(g, SolveMode::Exact, 0));
}
