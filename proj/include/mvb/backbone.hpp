#ifndef MVB_BACKBONE_HPP
#define MVB_BACKBONE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "mvb/community.hpp"
#include "mvb/errors.hpp"
#include "mvb/graph.hpp"
#include "mvb/vitality.hpp"

namespace mvb {

enum class BackboneMethod {
    modularity_vitality,
    overlapping_ego,
    overlapping_hubs,
    disparity,
};

inline const char* method_name(BackboneMethod m) {
    switch (m) {
        case BackboneMethod::modularity_vitality: return "mv";
        case BackboneMethod::overlapping_ego: return "ego";
        case BackboneMethod::overlapping_hubs: return "hubs";
        case BackboneMethod::disparity: return "disparity";
    }
    return "?";
}

struct BackboneSpec {
    BackboneMethod method = BackboneMethod::modularity_vitality;
    double target_fraction = 0.3; // backbone size as a fraction of N
    double alpha = 0.05;          // disparity significance threshold
    std::uint64_t seed = 0;
};

struct BackboneResult {
    WeightedGraph graph;
    std::vector<std::string> removed_order; // explicitly filtered nodes, in order
    std::string method_trace;               // textual event log
};

// Target node count: fraction of N rounded half up, at least 2.
inline int backbone_target_size(double target_fraction, int n) {
    if (!(target_fraction > 0.0) || target_fraction > 1.0)
        throw input_error("target fraction must be in (0, 1]");
    return static_cast<int>(std::floor(target_fraction * n + 0.5));
}

namespace detail {

// Mutable working copy for the pruning loop; node removal is O(degree^2 of
// the neighborhood) and connectivity checks run on the alive subset only.
struct PruneWorkspace {
    std::vector<std::vector<WeightedGraph::Neighbor>> adj;
    std::vector<char> alive;
    int alive_count = 0;

    explicit PruneWorkspace(const WeightedGraph& g)
        : alive(g.node_count(), 1), alive_count(g.node_count()) {
        adj.resize(g.node_count());
        for (int v = 0; v < g.node_count(); ++v) adj[v] = g.neighbors(v);
    }

    void remove(int v) {
        for (const auto& [u, w] : adj[v]) {
            (void)w;
            auto it = std::lower_bound(
                adj[u].begin(), adj[u].end(), v,
                [](const WeightedGraph::Neighbor& n, int key) {
                    return n.first < key;
                });
            if (it != adj[u].end() && it->first == v) adj[u].erase(it);
        }
        adj[v].clear();
        alive[v] = 0;
        --alive_count;
    }

    // Alive components, largest first; ties by smallest node index.
    std::vector<std::vector<int>> components() const {
        std::vector<std::vector<int>> comps;
        std::vector<char> seen(alive.size(), 0);
        for (int s = 0; s < static_cast<int>(alive.size()); ++s) {
            if (!alive[s] || seen[s]) continue;
            std::vector<int> comp;
            std::queue<int> q;
            q.push(s);
            seen[s] = 1;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                comp.push_back(x);
                for (const auto& [y, w] : adj[x]) {
                    (void)w;
                    if (!seen[y]) {
                        seen[y] = 1;
                        q.push(y);
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        std::stable_sort(comps.begin(), comps.end(),
                         [](const std::vector<int>& a, const std::vector<int>& b) {
                             if (a.size() != b.size()) return a.size() > b.size();
                             return a.front() < b.front();
                         });
        return comps;
    }

    std::vector<int> alive_nodes() const {
        std::vector<int> out;
        out.reserve(alive_count);
        for (int v = 0; v < static_cast<int>(alive.size()); ++v)
            if (alive[v]) out.push_back(v);
        return out;
    }
};

inline bool strength_desc(const WeightedGraph& g, int a, int b) {
    double sa = g.strength(a), sb = g.strength(b);
    if (sa != sb) return sa > sb;
    return g.label(a) < g.label(b);
}

inline bool strength_asc(const WeightedGraph& g, int a, int b) {
    double sa = g.strength(a), sb = g.strength(b);
    if (sa != sb) return sa < sb;
    return g.label(a) < g.label(b);
}

} // namespace detail

// Modularity vitality backbone: rank nodes by ascending |alpha|, repeatedly
// drop the lowest-ranked node still present, keep only the largest component
// whenever a removal disconnects the graph, stop once at most s nodes
// remain. Scores are computed once on the input graph (static ranking).
inline BackboneResult extract_mv_backbone(const WeightedGraph& g,
                                          const Partition& p,
                                          const BackboneSpec& spec) {
    p.validate(g);
    const int n = g.node_count();
    const int s = backbone_target_size(spec.target_fraction, n);
    if (s >= n) {
        return BackboneResult{g, {}, "noop: target size covers the whole graph\n"};
    }
    if (s < 2) throw input_error("backbone target size must be at least 2");

    VitalityScores scores = modularity_vitality(g, p);
    std::vector<int> order = rank_by_absolute_vitality(scores, g);

    detail::PruneWorkspace ws(g);
    BackboneResult result;
    std::ostringstream trace;

    for (int v : order) {
        if (ws.alive_count <= s) break;
        if (!ws.alive[v]) continue; // already gone in an LCC truncation
        ws.remove(v);
        result.removed_order.push_back(g.label(v));
        trace << "pop " << g.label(v) << "\n";

        if (ws.alive_count > 0) {
            auto comps = ws.components();
            if (comps.size() > 1) {
                trace << "lcc-drop";
                for (std::size_t c = 1; c < comps.size(); ++c)
                    for (int x : comps[c]) {
                        ws.remove(x);
                        trace << " " << g.label(x);
                    }
                trace << "\n";
            }
        }
    }

    result.graph = g.induced_subgraph(ws.alive_nodes());
    result.method_trace = trace.str();
    return result;
}

// Overlapping nodes ego backbone: overlapping nodes and their one-step
// neighbors are the candidates. Ego units (an overlapping node plus its
// neighborhood) enter in descending order of the overlapping node's
// strength; inside a unit the center enters first and neighbors follow in
// ascending strength, so the unit keeps its peripheral, star-like character
// when the budget truncates it.
inline BackboneResult extract_overlapping_ego_backbone(const WeightedGraph& g,
                                                       const Cover& cover,
                                                       const BackboneSpec& spec) {
    cover.validate(g);
    const int n = g.node_count();
    const int s = backbone_target_size(spec.target_fraction, n);
    if (s < 2) throw input_error("backbone target size must be at least 2");

    std::vector<int> overlaps = cover.overlapping_nodes();
    if (overlaps.empty())
        throw input_error(
            "cover has no overlapping nodes; supply a different cover or a "
            "lower clique size k");

    std::sort(overlaps.begin(), overlaps.end(),
              [&](int a, int b) { return detail::strength_desc(g, a, b); });

    std::vector<char> kept(n, 0);
    std::vector<int> keep_order;
    auto admit = [&](int v) {
        if (!kept[v] && static_cast<int>(keep_order.size()) < s) {
            kept[v] = 1;
            keep_order.push_back(v);
        }
    };

    std::ostringstream trace;
    for (int center : overlaps) {
        if (static_cast<int>(keep_order.size()) >= s) break;
        trace << "ego " << g.label(center) << "\n";
        admit(center);
        std::vector<int> nbrs;
        for (const auto& [u, w] : g.neighbors(center)) {
            (void)w;
            nbrs.push_back(u);
        }
        std::sort(nbrs.begin(), nbrs.end(),
                  [&](int a, int b) { return detail::strength_asc(g, a, b); });
        for (int u : nbrs) admit(u);
    }

    WeightedGraph sub = g.induced_subgraph(keep_order);
    BackboneResult result;
    result.graph = sub.largest_connected_component();
    for (int v = 0; v < n; ++v)
        if (!kept[v]) result.removed_order.push_back(g.label(v));
    if (result.graph.node_count() < sub.node_count())
        trace << "lcc-trim " << (sub.node_count() - result.graph.node_count())
              << " nodes\n";
    result.method_trace = trace.str();
    return result;
}

// Overlapping nodes and hubs backbone: all overlapping nodes first (highest
// strength wins if they alone exceed the budget), then the remaining budget
// is filled with non-overlapping nodes in descending strength.
inline BackboneResult extract_overlapping_hubs_backbone(const WeightedGraph& g,
                                                        const Cover& cover,
                                                        const BackboneSpec& spec) {
    cover.validate(g);
    const int n = g.node_count();
    const int s = backbone_target_size(spec.target_fraction, n);
    if (s < 2) throw input_error("backbone target size must be at least 2");

    std::vector<int> overlaps = cover.overlapping_nodes();
    if (overlaps.empty())
        throw input_error(
            "cover has no overlapping nodes; supply a different cover or a "
            "lower clique size k");

    std::sort(overlaps.begin(), overlaps.end(),
              [&](int a, int b) { return detail::strength_desc(g, a, b); });

    std::vector<char> kept(n, 0);
    std::vector<int> keep_order;
    for (int v : overlaps) {
        if (static_cast<int>(keep_order.size()) >= s) break;
        kept[v] = 1;
        keep_order.push_back(v);
    }
    if (static_cast<int>(keep_order.size()) < s) {
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (!kept[v]) rest.push_back(v);
        std::sort(rest.begin(), rest.end(),
                  [&](int a, int b) { return detail::strength_desc(g, a, b); });
        for (int v : rest) {
            if (static_cast<int>(keep_order.size()) >= s) break;
            kept[v] = 1;
            keep_order.push_back(v);
        }
    }

    WeightedGraph sub = g.induced_subgraph(keep_order);
    BackboneResult result;
    result.graph = sub.largest_connected_component();
    for (int v = 0; v < n; ++v)
        if (!kept[v]) result.removed_order.push_back(g.label(v));
    std::ostringstream trace;
    trace << "overlaps kept "
          << std::min<std::size_t>(overlaps.size(), keep_order.size()) << "\n";
    if (result.graph.node_count() < sub.node_count())
        trace << "lcc-trim " << (sub.node_count() - result.graph.node_count())
              << " nodes\n";
    result.method_trace = trace.str();
    return result;
}

// Disparity filter (edge filtering): for a node of degree k >= 2, an
// incident edge with weight fraction p = w / strength has significance
// (1-p)^(k-1); an edge survives when it is significant (< alpha) from at
// least one endpoint. Edges at degree-1 nodes always survive. Nodes left
// without edges are dropped.
inline BackboneResult disparity_filter(const WeightedGraph& g, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw input_error("disparity alpha must be in (0, 1)");

    std::vector<double> strength(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) strength[v] = g.strength(v);

    auto significant_from = [&](int i, double w) {
        int k = g.degree(i);
        if (k < 2) return true; // degree-1 endpoints keep their edge
        double p = w / strength[i];
        return std::pow(1.0 - p, k - 1) < alpha;
    };

    WeightedGraph kept;
    long long kept_edges = 0;
    std::vector<char> has_edge(g.node_count(), 0);
    g.for_each_edge([&](int u, int v, double w) {
        if (significant_from(u, w) || significant_from(v, w)) {
            has_edge[u] = has_edge[v] = 1;
            ++kept_edges;
        }
    });
    for (int v = 0; v < g.node_count(); ++v)
        if (has_edge[v]) kept.add_node(g.label(v));
    g.for_each_edge([&](int u, int v, double w) {
        if (significant_from(u, w) || significant_from(v, w))
            kept.add_edge(g.label(u), g.label(v), w);
    });

    BackboneResult result;
    result.graph = std::move(kept);
    for (int v = 0; v < g.node_count(); ++v)
        if (!has_edge[v]) result.removed_order.push_back(g.label(v));
    std::ostringstream trace;
    trace << "alpha " << alpha << ": kept " << kept_edges << " of "
          << g.edge_count() << " edges, dropped " << result.removed_order.size()
          << " isolated nodes\n";
    result.method_trace = trace.str();
    return result;
}

} // namespace mvb

#endif
