#include "dwelltour/gtsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dwelltour {
namespace {

constexpr int kHeldKarpMaxNodes = 15;
constexpr int kCandidateListSize = 16;
constexpr int kMaxImprovementPasses = 120;

int restarts_for(Effort effort) {
    switch (effort) {
        case Effort::Fast: return 1;
        case Effort::Default: return 8;
        case Effort::Thorough: return 32;
    }
    return 8;
}

double tour_cost_of(const Matrix& w, const std::vector<int>& order) {
    double cost = 0.0;
    for (size_t i = 0; i < order.size(); ++i)
        cost += w(order[i], order[(i + 1) % order.size()]);
    return cost;
}

// Improvement acceptance threshold scaled to the arc magnitudes involved, so
// rounding noise in penalty-shifted instances is never accepted as progress.
double improve_eps(double max_abs_arc) {
    return 32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, max_abs_arc);
}

struct CandidateLists {
    std::vector<std::vector<int>> out;  // cheap successors per node
    std::vector<std::vector<int>> in;   // cheap predecessors per node
};

CandidateLists build_candidates(const Matrix& w,
                                const std::vector<std::vector<int>>* extra_out) {
    int n = w.n;
    int k = std::min(kCandidateListSize, n - 1);
    CandidateLists lists;
    lists.out.resize(static_cast<size_t>(n));
    lists.in.resize(static_cast<size_t>(n));
    std::vector<int> idx(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
        idx.clear();
        for (int v = 0; v < n; ++v)
            if (v != u) idx.push_back(v);
        std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
            double wa = w(u, a), wb = w(u, b);
            return wa < wb || (wa == wb && a < b);
        });
        auto& out = lists.out[static_cast<size_t>(u)];
        out.assign(idx.begin(), idx.begin() + k);
        if (extra_out) {
            for (int v : (*extra_out)[static_cast<size_t>(u)])
                if (v != u && std::find(out.begin(), out.end(), v) == out.end())
                    out.push_back(v);
        }
    }
    for (int v = 0; v < n; ++v) {
        idx.clear();
        for (int u = 0; u < n; ++u)
            if (u != v) idx.push_back(u);
        std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
            double wa = w(a, v), wb = w(b, v);
            return wa < wb || (wa == wb && a < b);
        });
        lists.in[static_cast<size_t>(v)].assign(idx.begin(), idx.begin() + k);
    }
    // mirror the extra successor arcs into the predecessor lists
    if (extra_out) {
        for (int u = 0; u < n; ++u) {
            for (int v : (*extra_out)[static_cast<size_t>(u)]) {
                if (v == u) continue;
                auto& in = lists.in[static_cast<size_t>(v)];
                if (std::find(in.begin(), in.end(), u) == in.end()) in.push_back(u);
            }
        }
    }
    return lists;
}

std::vector<int> nearest_neighbor_tour(const Matrix& w, int start) {
    int n = w.n;
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    std::vector<char> visited(static_cast<size_t>(n), 0);
    int current = start;
    order.push_back(current);
    visited[static_cast<size_t>(current)] = 1;
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_w = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            if (visited[static_cast<size_t>(v)]) continue;
            double cand = w(current, v);
            if (cand < best_w) {
                best_w = cand;
                best = v;
            }
        }
        order.push_back(best);
        visited[static_cast<size_t>(best)] = 1;
        current = best;
    }
    return order;
}

class LocalSearch {
public:
    LocalSearch(const Matrix& w, const CandidateLists& cand) : w_(w), cand_(cand), n_(w.n) {}

    // Runs alternating Or-opt and 3-opt passes to a local optimum (or the
    // pass cap) and returns the best cost seen. `order` holds the best tour.
    double run(std::vector<int>& order, std::vector<double>* pass_costs) {
        order_ = order;
        sync_pos();
        double cost = tour_cost_of(w_, order_);
        double best_cost = cost;
        std::vector<int> best_order = order_;
        for (int pass = 0; pass < kMaxImprovementPasses; ++pass) {
            double delta = or_opt_pass() + three_opt_pass() + three_opt_dual_pass() +
                           expensive_arc_pass();
            cost = tour_cost_of(w_, order_);
            if (cost < best_cost) {
                best_cost = cost;
                best_order = order_;
            }
            if (pass_costs) pass_costs->push_back(best_cost);
            if (delta >= 0.0) break;  // no move accepted
        }
        order = best_order;
        return best_cost;
    }

private:
    const Matrix& w_;
    const CandidateLists& cand_;
    int n_;
    std::vector<int> order_;
    std::vector<int> pos_;

    void sync_pos() {
        pos_.assign(static_cast<size_t>(n_), 0);
        for (int i = 0; i < n_; ++i) pos_[static_cast<size_t>(order_[static_cast<size_t>(i)])] = i;
    }

    int succ_pos(int i) const { return i + 1 < n_ ? i + 1 : 0; }
    int node_at(int i) const { return order_[static_cast<size_t>(i)]; }

    // Relocate the segment of `len` nodes starting at position i to sit after
    // position j (positions before removal). Returns accepted delta (< 0).
    double try_relocate(int i, int len, int target_node) {
        int prev = (i - 1 + n_) % n_;
        int after = (i + len) % n_;
        int s_first = node_at(i);
        int s_last = node_at((i + len - 1) % n_);
        int p = target_node;
        int p_pos = pos_[static_cast<size_t>(p)];
        // target must lie outside the segment and not be the node just before it
        int rel = (p_pos - i + n_) % n_;
        if (rel < len) return 0.0;
        if (p == node_at(prev)) return 0.0;
        int q = node_at(succ_pos(p_pos));
        double removed = w_(node_at(prev), s_first) + w_(s_last, node_at(after)) + w_(p, q);
        double added = w_(node_at(prev), node_at(after)) + w_(p, s_first) + w_(s_last, q);
        double maxabs = std::max({std::fabs(removed), std::fabs(added)});
        double delta = added - removed;
        if (delta >= -improve_eps(maxabs)) return 0.0;
        apply_relocate(i, len, p_pos);
        return delta;
    }

    void apply_relocate(int i, int len, int p_pos) {
        std::vector<int> segment(static_cast<size_t>(len));
        for (int k = 0; k < len; ++k) segment[static_cast<size_t>(k)] = node_at((i + k) % n_);
        std::vector<int> rest;
        rest.reserve(static_cast<size_t>(n_ - len));
        for (int k = (i + len) % n_; k != i; k = succ_pos(k)) rest.push_back(node_at(k));
        std::vector<int> next_order;
        next_order.reserve(static_cast<size_t>(n_));
        int p = node_at(p_pos);
        for (int node : rest) {
            next_order.push_back(node);
            if (node == p)
                for (int s : segment) next_order.push_back(s);
        }
        order_ = std::move(next_order);
        sync_pos();
    }

    double or_opt_pass() {
        double total = 0.0;
        for (int len = 1; len <= 3 && len < n_; ++len) {
            for (int i = 0; i < n_; ++i) {
                int s_first = node_at(i);
                for (int p : cand_.in[static_cast<size_t>(s_first)]) {
                    double delta = try_relocate(i, len, p);
                    if (delta < 0.0) {
                        total += delta;
                        break;  // positions shifted; move to next i
                    }
                }
            }
        }
        return total;
    }

    // Orientation-preserving 3-opt: cut arcs (a,b), (c,d), (e,f) with the
    // cuts in tour order and reconnect as (a,d), (e,b), (c,f), which swaps
    // the two middle blocks without reversing either.
    double three_opt_pass() {
        double total = 0.0;
        for (int ia = 0; ia < n_; ++ia) {
            int a = node_at(ia);
            int b = node_at(succ_pos(ia));
            bool moved = false;
            for (int d : cand_.out[static_cast<size_t>(a)]) {
                if (d == b) continue;
                int id = pos_[static_cast<size_t>(d)];
                int rel_d = (id - ia + n_) % n_;
                if (rel_d < 2) continue;  // d must start a later block
                for (int e : cand_.in[static_cast<size_t>(b)]) {
                    int ie = pos_[static_cast<size_t>(e)];
                    int rel_e = (ie - ia + n_) % n_;
                    if (rel_e < rel_d || rel_e >= n_) continue;
                    if (e == a) continue;
                    int c = node_at((id - 1 + n_) % n_);
                    int f = node_at(succ_pos(ie));
                    double removed = w_(a, b) + w_(c, d) + w_(e, f);
                    double added = w_(a, d) + w_(e, b) + w_(c, f);
                    double maxabs = std::max(std::fabs(removed), std::fabs(added));
                    double delta = added - removed;
                    if (delta >= -improve_eps(maxabs)) continue;
                    apply_three_opt(ia, (id - 1 + n_) % n_, ie);
                    total += delta;
                    moved = true;
                    break;
                }
                if (moved) break;
            }
        }
        return total;
    }

    // Same reconnection as three_opt_pass but anchored on the other two new
    // arcs: (c,f) through the in-candidates of f and (e,b) through the
    // out-candidates of e. Arc costs carry the source's dwell, so only this
    // orientation can see that switching to d lowers the onward cost (c,f).
    double three_opt_dual_pass() {
        double total = 0.0;
        for (int ie = 0; ie < n_; ++ie) {
            int e = node_at(ie);
            int f = node_at(succ_pos(ie));
            bool moved = false;
            for (int c : cand_.in[static_cast<size_t>(f)]) {
                if (c == e) continue;
                int ic = pos_[static_cast<size_t>(c)];
                int rel_c = (ic - ie + n_) % n_;
                if (rel_c < 2) continue;  // c must sit strictly before e, after the wrap
                for (int b : cand_.out[static_cast<size_t>(e)]) {
                    if (b == f) continue;
                    int ib = pos_[static_cast<size_t>(b)];
                    int ia = (ib - 1 + n_) % n_;
                    int rel_a = (ia - ie + n_) % n_;
                    // forward from the (e,f) cut the order must be a, then c
                    if (rel_a < 1 || rel_a >= rel_c) continue;
                    int a = node_at(ia);
                    if (a == e || a == c) continue;
                    int d = node_at(succ_pos(ic));
                    double removed = w_(a, b) + w_(c, d) + w_(e, f);
                    double added = w_(a, d) + w_(e, b) + w_(c, f);
                    double maxabs = std::max(std::fabs(removed), std::fabs(added));
                    double delta = added - removed;
                    if (delta >= -improve_eps(maxabs)) continue;
                    apply_three_opt(ia, ic, ie);
                    total += delta;
                    moved = true;
                    break;
                }
                if (moved) break;
            }
        }
        return total;
    }

    // The candidate lists cannot see every useful reconnection, so also try
    // 3-opt cuts restricted to the most expensive tour arcs. On
    // penalty-shifted instances these are the cluster transitions, which
    // makes this pass an exhaustive block reordering.
    double expensive_arc_pass() {
        constexpr int kExpensiveArcs = 12;
        double total = 0.0;
        bool improved = true;
        while (improved) {
            improved = false;
            std::vector<int> by_cost(static_cast<size_t>(n_));
            for (int i = 0; i < n_; ++i) by_cost[static_cast<size_t>(i)] = i;
            int k = std::min(kExpensiveArcs, n_);
            std::partial_sort(by_cost.begin(), by_cost.begin() + k, by_cost.end(),
                              [&](int i, int j) {
                                  return w_(node_at(i), node_at(succ_pos(i))) >
                                         w_(node_at(j), node_at(succ_pos(j)));
                              });
            std::vector<int> cuts(by_cost.begin(), by_cost.begin() + k);
            std::sort(cuts.begin(), cuts.end());
            for (size_t x = 0; x < cuts.size() && !improved; ++x) {
                for (size_t y = x + 1; y < cuts.size() && !improved; ++y) {
                    for (size_t z = y + 1; z < cuts.size() && !improved; ++z) {
                        int ia = cuts[x], ic = cuts[y], ie = cuts[z];
                        int a = node_at(ia), b = node_at(succ_pos(ia));
                        int c = node_at(ic), d = node_at(succ_pos(ic));
                        int e = node_at(ie), f = node_at(succ_pos(ie));
                        double removed = w_(a, b) + w_(c, d) + w_(e, f);
                        double added = w_(a, d) + w_(e, b) + w_(c, f);
                        double delta = added - removed;
                        if (delta >= -improve_eps(std::max(std::fabs(removed),
                                                           std::fabs(added))))
                            continue;
                        apply_three_opt(ia, ic, ie);
                        total += delta;
                        improved = true;
                    }
                }
            }
        }
        return total;
    }

    // Cuts after positions ia, ic, ie (in tour order, rotated frame of ia).
    void apply_three_opt(int ia, int ic, int ie) {
        std::vector<int> next_order;
        next_order.reserve(static_cast<size_t>(n_));
        auto push_range = [&](int from, int to) {  // inclusive, cyclic walk
            for (int k = from;; k = succ_pos(k)) {
                next_order.push_back(node_at(k));
                if (k == to) break;
            }
        };
        push_range(succ_pos(ie), ia);   // block containing f .. a
        push_range(succ_pos(ic), ie);   // block d .. e
        push_range(succ_pos(ia), ic);   // block b .. c
        order_ = std::move(next_order);
        sync_pos();
    }
};

}  // namespace

void GtspInstance::validate() const {
    int n = node_count();
    std::vector<int> owner(static_cast<size_t>(n), -1);
    for (size_t j = 0; j < clusters.size(); ++j) {
        if (clusters[j].empty())
            throw std::invalid_argument("gtsp: cluster " + std::to_string(j) + " is empty");
        for (int v : clusters[j]) {
            if (v < 0 || v >= n) throw std::invalid_argument("gtsp: node index out of range");
            if (owner[static_cast<size_t>(v)] != -1)
                throw std::invalid_argument("gtsp: clusters overlap");
            owner[static_cast<size_t>(v)] = static_cast<int>(j);
        }
    }
    for (int v = 0; v < n; ++v)
        if (owner[static_cast<size_t>(v)] == -1)
            throw std::invalid_argument("gtsp: node not covered by any cluster");
}

AtspInstance noon_bean_transform(const GtspInstance& g) {
    g.validate();
    int n = g.node_count();
    int m = g.cluster_count();

    std::vector<int> cluster_of(static_cast<size_t>(n), -1);
    AtspInstance t;
    t.cluster_successor.assign(static_cast<size_t>(n), -1);
    for (int j = 0; j < m; ++j) {
        const auto& cluster = g.clusters[static_cast<size_t>(j)];
        for (size_t k = 0; k < cluster.size(); ++k) {
            cluster_of[static_cast<size_t>(cluster[k])] = j;
            t.cluster_successor[static_cast<size_t>(cluster[k])] =
                cluster[(k + 1) % cluster.size()];
        }
    }

    double inter_sum = 0.0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (cluster_of[static_cast<size_t>(u)] != cluster_of[static_cast<size_t>(v)])
                inter_sum += g.weight(u, v);
    t.penalty = 1.0 + inter_sum;
    t.sentinel = (static_cast<double>(m) + 1.0) * t.penalty;

    t.weight = Matrix(n, t.sentinel);
    t.node_map.resize(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
        t.node_map[static_cast<size_t>(u)] = u;
        int sigma = t.cluster_successor[static_cast<size_t>(u)];
        for (int v = 0; v < n; ++v) {
            if (v == u) continue;
            if (cluster_of[static_cast<size_t>(u)] == cluster_of[static_cast<size_t>(v)]) {
                if (v == sigma) t.weight(u, v) = 0.0;
            } else {
                t.weight(u, v) = g.weight(sigma, v) + t.penalty;
            }
        }
    }
    return t;
}

AtspTour solve_atsp_exact(const Matrix& w) {
    int n = w.n;
    if (n < 2) throw std::invalid_argument("solve_atsp_exact: need n >= 2");
    if (n > kHeldKarpMaxNodes)
        throw std::invalid_argument("solve_atsp_exact: n > 15 rejected");

    // g[mask][i]: cheapest continuation from node i through exactly the nodes
    // in mask (subset of 1..n-1) and back to node 0.
    int full = (1 << (n - 1)) - 1;
    std::vector<std::vector<double>> g(static_cast<size_t>(full + 1),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) g[0][static_cast<size_t>(i)] = w(i, 0);
    for (int mask = 1; mask <= full; ++mask) {
        for (int i = 0; i < n; ++i) {
            if (i != 0 && (mask & (1 << (i - 1)))) continue;
            double best = std::numeric_limits<double>::infinity();
            for (int j = 1; j < n; ++j) {
                if (!(mask & (1 << (j - 1)))) continue;
                double cand = w(i, j) + g[static_cast<size_t>(mask ^ (1 << (j - 1)))]
                                         [static_cast<size_t>(j)];
                if (cand < best) best = cand;
            }
            g[static_cast<size_t>(mask)][static_cast<size_t>(i)] = best;
        }
    }

    AtspTour tour;
    tour.cost = g[static_cast<size_t>(full)][0];
    tour.order.push_back(0);
    int mask = full;
    int current = 0;
    while (mask != 0) {
        bool advanced = false;
        for (int j = 1; j < n; ++j) {  // smallest feasible j: lexicographic tie-break
            if (!(mask & (1 << (j - 1)))) continue;
            double cand = w(current, j) +
                          g[static_cast<size_t>(mask ^ (1 << (j - 1)))][static_cast<size_t>(j)];
            if (cand == g[static_cast<size_t>(mask)][static_cast<size_t>(current)]) {
                tour.order.push_back(j);
                mask ^= 1 << (j - 1);
                current = j;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw std::logic_error("solve_atsp_exact: reconstruction failed");
    }
    return tour;
}

AtspTour solve_atsp_heuristic(const Matrix& w, uint64_t seed, Effort effort,
                              std::vector<double>* pass_costs,
                              const std::vector<std::vector<int>>* extra_out_candidates) {
    int n = w.n;
    if (n < 2) throw std::invalid_argument("solve_atsp_heuristic: need n >= 2");
    CandidateLists cand = build_candidates(w, extra_out_candidates);
    std::mt19937_64 rng(seed);
    int restarts = restarts_for(effort);

    AtspTour best;
    best.cost = std::numeric_limits<double>::infinity();
    std::vector<double> best_history;
    for (int r = 0; r < restarts; ++r) {
        int start = static_cast<int>(rng() % static_cast<uint64_t>(n));
        std::vector<int> order = nearest_neighbor_tour(w, start);
        std::vector<double> history;
        LocalSearch search(w, cand);
        double cost = search.run(order, pass_costs ? &history : nullptr);
        if (cost < best.cost) {
            best.cost = cost;
            best.order = std::move(order);
            best_history = std::move(history);
        }
    }
    if (pass_costs) *pass_costs = std::move(best_history);
    return best;
}

double gtsp_tour_cost(const GtspInstance& g, const std::vector<int>& node_sequence) {
    if (node_sequence.size() <= 1) return 0.0;
    double cost = 0.0;
    for (size_t i = 0; i < node_sequence.size(); ++i)
        cost += g.weight(node_sequence[i], node_sequence[(i + 1) % node_sequence.size()]);
    return cost;
}

namespace {

GtspTour contract_atsp_tour(const GtspInstance& g, const AtspInstance& t,
                            const AtspTour& atsp_tour) {
    int n = g.node_count();
    std::vector<int> cluster_of(static_cast<size_t>(n), -1);
    for (size_t j = 0; j < g.clusters.size(); ++j)
        for (int v : g.clusters[j]) cluster_of[static_cast<size_t>(v)] = static_cast<int>(j);

    for (size_t i = 0; i < atsp_tour.order.size(); ++i) {
        int u = atsp_tour.order[i];
        int v = atsp_tour.order[(i + 1) % atsp_tour.order.size()];
        if (t.weight(u, v) >= t.sentinel)
            throw std::logic_error("gtsp: ATSP tour contains a sentinel arc");
    }

    // Entry node of each cluster = first node of its first run in the tour.
    GtspTour tour;
    std::vector<char> taken(g.clusters.size(), 0);
    size_t len = atsp_tour.order.size();
    for (size_t i = 0; i < len; ++i) {
        int node = atsp_tour.order[i];
        int prev = atsp_tour.order[(i + len - 1) % len];
        int cl = cluster_of[static_cast<size_t>(node)];
        if (cluster_of[static_cast<size_t>(prev)] != cl && !taken[static_cast<size_t>(cl)]) {
            taken[static_cast<size_t>(cl)] = 1;
            tour.node_sequence.push_back(t.node_map[static_cast<size_t>(node)]);
        }
    }
    if (tour.node_sequence.size() != g.clusters.size())
        throw std::logic_error("gtsp: contraction missed a cluster");

    // Canonical rotation: smallest node id first.
    auto min_it = std::min_element(tour.node_sequence.begin(), tour.node_sequence.end());
    std::rotate(tour.node_sequence.begin(), min_it, tour.node_sequence.end());
    tour.cost = gtsp_tour_cost(g, tour.node_sequence);
    return tour;
}

}  // namespace

namespace {

// Per-node extra successor candidates for the transformed instance: the
// best entries of every other cluster, scored by the arriving arc plus the
// entry's cheapest onward arc. Arc weights carry source-side costs (dwell),
// so plain nearest-arc candidate lists cannot see which entry leaves a
// cluster cheaply; this can.
std::vector<std::vector<int>> entry_candidates(const GtspInstance& g, const AtspInstance& t) {
    int n = g.node_count();
    int m = g.cluster_count();
    constexpr int kEntriesPerCluster = 2;

    std::vector<int> cluster_of(static_cast<size_t>(n));
    for (int j = 0; j < m; ++j)
        for (int v : g.clusters[static_cast<size_t>(j)]) cluster_of[static_cast<size_t>(v)] = j;

    std::vector<double> onward(static_cast<size_t>(n),
                               std::numeric_limits<double>::infinity());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (cluster_of[static_cast<size_t>(x)] != cluster_of[static_cast<size_t>(y)])
                onward[static_cast<size_t>(x)] =
                    std::min(onward[static_cast<size_t>(x)], g.weight(x, y));

    std::vector<std::vector<int>> extra(static_cast<size_t>(n));
    std::vector<std::pair<double, int>> scored;
    for (int p = 0; p < n; ++p) {
        int source = t.cluster_successor[static_cast<size_t>(p)];  // GTSP node leaving via p
        auto& out = extra[static_cast<size_t>(p)];
        for (int j = 0; j < m; ++j) {
            if (j == cluster_of[static_cast<size_t>(p)]) continue;
            scored.clear();
            for (int x : g.clusters[static_cast<size_t>(j)])
                scored.emplace_back(g.weight(source, x) + onward[static_cast<size_t>(x)], x);
            int take = std::min<int>(kEntriesPerCluster, static_cast<int>(scored.size()));
            std::partial_sort(scored.begin(), scored.begin() + take, scored.end());
            for (int s = 0; s < take; ++s) out.push_back(scored[static_cast<size_t>(s)].second);
        }
    }
    return extra;
}

}  // namespace

GtspTour solve_gtsp(const GtspInstance& g, SolveMode mode, uint64_t seed, Effort effort) {
    g.validate();
    if (g.cluster_count() == 1) {
        // A one-cluster tour is the degenerate single node; no arcs, cost 0.
        return GtspTour{{g.clusters[0][0]}, 0.0};
    }
    AtspInstance t = noon_bean_transform(g);
    AtspTour atsp_tour;
    if (mode == SolveMode::Exact) {
        if (t.weight.n > kHeldKarpMaxNodes)
            throw std::invalid_argument("solve_gtsp: exact mode limited to 15 nodes");
        atsp_tour = solve_atsp_exact(t.weight);
    } else {
        std::vector<std::vector<int>> extra = entry_candidates(g, t);
        atsp_tour = solve_atsp_heuristic(t.weight, seed, effort, nullptr, &extra);
    }
    return contract_atsp_tour(g, t, atsp_tour);
}

GtspTour brute_force_gtsp(const GtspInstance& g) {
    g.validate();
    int m = g.cluster_count();
    double combos = 1.0;
    for (const auto& cluster : g.clusters) combos *= static_cast<double>(cluster.size());
    for (int k = 2; k < m; ++k) combos *= k;  // (M-1)!
    if (combos > 1e6) throw std::invalid_argument("brute_force_gtsp: instance too large");

    if (m == 1) return GtspTour{{g.clusters[0][0]}, 0.0};

    std::vector<int> perm(static_cast<size_t>(m - 1));
    std::iota(perm.begin(), perm.end(), 1);

    GtspTour best;
    best.cost = std::numeric_limits<double>::infinity();
    std::vector<int> choice(static_cast<size_t>(m), 0);
    std::vector<int> sequence(static_cast<size_t>(m));
    do {
        std::fill(choice.begin(), choice.end(), 0);
        while (true) {
            sequence[0] = g.clusters[0][static_cast<size_t>(choice[0])];
            for (int k = 1; k < m; ++k) {
                int cl = perm[static_cast<size_t>(k - 1)];
                sequence[static_cast<size_t>(k)] =
                    g.clusters[static_cast<size_t>(cl)][static_cast<size_t>(choice[static_cast<size_t>(k)])];
            }
            double cost = gtsp_tour_cost(g, sequence);
            if (cost < best.cost) {
                best.cost = cost;
                best.node_sequence = sequence;
            }
            // odometer over node choices
            int k = m - 1;
            for (; k >= 0; --k) {
                int cl = k == 0 ? 0 : perm[static_cast<size_t>(k - 1)];
                if (++choice[static_cast<size_t>(k)] <
                    static_cast<int>(g.clusters[static_cast<size_t>(cl)].size()))
                    break;
                choice[static_cast<size_t>(k)] = 0;
            }
            if (k < 0) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto min_it = std::min_element(best.node_sequence.begin(), best.node_sequence.end());
    std::rotate(best.node_sequence.begin(), min_it, best.node_sequence.end());
    best.cost = gtsp_tour_cost(g, best.node_sequence);
    return best;
}

}  // namespace dwelltour
