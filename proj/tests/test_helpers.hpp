#ifndef MVB_TEST_HELPERS_HPP
#define MVB_TEST_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "mvb/community.hpp"
#include "mvb/graph.hpp"
#include "mvb/rng.hpp"

namespace mvb_test {

inline std::string node_name(int i) { return "n" + std::to_string(i); }

// Erdos-Renyi-style weighted graph, guaranteed at least one edge.
inline mvb::WeightedGraph random_graph(std::mt19937_64& rng, int n,
                                       double edge_prob = 0.3) {
    mvb::WeightedGraph g;
    for (int i = 0; i < n; ++i) g.add_node(node_name(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mvb::uniform_double(rng) < edge_prob)
                g.add_edge(i, j, 0.1 + 9.9 * mvb::uniform_double(rng));
    if (g.edge_count() == 0 && n >= 2)
        g.add_edge(0, 1, 1.0 + mvb::uniform_double(rng));
    return g;
}

// Random community assignment, ids contiguous from 0.
inline mvb::Partition random_partition(std::mt19937_64& rng,
                                       const mvb::WeightedGraph& g) {
    int max_comms =
        1 + static_cast<int>(mvb::uniform_below(rng, g.node_count()));
    mvb::Partition p;
    p.community.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v)
        p.community[v] = static_cast<int>(mvb::uniform_below(rng, max_comms));
    p.n_communities = max_comms;
    p.compact();
    return p;
}

// Two unit-weight triangles {a,b,c} and {d,e,f} joined by the edge c-d.
inline mvb::WeightedGraph two_triangles_bridge() {
    mvb::WeightedGraph g;
    const std::pair<const char*, const char*> edges[] = {
        {"a", "b"}, {"a", "c"}, {"b", "c"},
        {"d", "e"}, {"d", "f"}, {"e", "f"},
        {"c", "d"}};
    for (auto [u, v] : edges) g.add_edge(u, v, 1.0);
    return g;
}

// Two disjoint unit-weight triangles {a,b,c} and {d,e,f}.
inline mvb::WeightedGraph two_triangles_disjoint() {
    mvb::WeightedGraph g;
    const std::pair<const char*, const char*> edges[] = {
        {"a", "b"}, {"a", "c"}, {"b", "c"},
        {"d", "e"}, {"d", "f"}, {"e", "f"}};
    for (auto [u, v] : edges) g.add_edge(u, v, 1.0);
    return g;
}

inline mvb::Partition triangle_partition(const mvb::WeightedGraph& g) {
    mvb::Partition p;
    p.community.resize(g.node_count());
    for (int v = 0; v < g.node_count(); ++v)
        p.community[v] = g.label(v) < "d" ? 0 : 1;
    p.n_communities = 2;
    return p;
}

// Eq.-style double sum over ordered node pairs with the degree-product null
// model; the independent route used to cross-check the per-community formula.
inline double modularity_double_sum(const mvb::WeightedGraph& g,
                                    const mvb::Partition& p) {
    const double two_w = 2.0 * g.total_weight();
    if (two_w <= 0.0) return 0.0;
    const int n = g.node_count();
    std::vector<double> strength(n);
    for (int v = 0; v < n; ++v) strength[v] = g.strength(v);
    double q = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (p.community[i] != p.community[j]) continue;
            double a_ij = g.edge_weight(i, j);
            q += a_ij - strength[i] * strength[j] / two_w;
        }
    return q / two_w;
}

} // namespace mvb_test

#endif
