#ifndef MVB_COMMUNITY_HPP
#define MVB_COMMUNITY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mvb/errors.hpp"
#include "mvb/graph.hpp"
#include "mvb/rng.hpp"

namespace mvb {

// Non-overlapping community assignment: community[v] for every node index of
// the target graph, ids contiguous from 0.
struct Partition {
    std::vector<int> community;
    int n_communities = 0;

    static Partition singletons(const WeightedGraph& g) {
        Partition p;
        p.community.resize(g.node_count());
        std::iota(p.community.begin(), p.community.end(), 0);
        p.n_communities = g.node_count();
        return p;
    }

    static Partition whole(const WeightedGraph& g) {
        Partition p;
        p.community.assign(g.node_count(), 0);
        p.n_communities = g.empty() ? 0 : 1;
        return p;
    }

    void validate(const WeightedGraph& g) const {
        if (static_cast<int>(community.size()) != g.node_count())
            throw error("partition does not cover the graph ("
                        + std::to_string(community.size()) + " entries, "
                        + std::to_string(g.node_count()) + " nodes)");
        for (int c : community)
            if (c < 0 || c >= n_communities)
                throw error("partition has a community id out of range");
    }

    // Renumber ids to be contiguous from 0 in order of first appearance.
    void compact() {
        std::map<int, int> remap;
        for (int& c : community) {
            auto [it, inserted] = remap.emplace(c, static_cast<int>(remap.size()));
            c = it->second;
            (void)inserted;
        }
        n_communities = static_cast<int>(remap.size());
    }
};

// Per-community weight bookkeeping. internal_weight[c] counts each inside
// edge once; external_weight[c] counts edges with exactly one endpoint in c.
struct CommunityAccounting {
    std::vector<double> internal_weight;
    std::vector<double> external_weight;
    double total_weight = 0.0;

    //   sum_c in_c + (1/2) sum_c out_c == total_weight
    double identity_gap() const {
        double in_sum = 0.0, out_sum = 0.0;
        for (double x : internal_weight) in_sum += x;
        for (double x : external_weight) out_sum += x;
        return in_sum + 0.5 * out_sum - total_weight;
    }

    double modularity() const {
        if (total_weight <= 0.0) return 0.0;
        const double W = total_weight;
        double q = 0.0;
        for (std::size_t c = 0; c < internal_weight.size(); ++c) {
            double stot = 2.0 * internal_weight[c] + external_weight[c];
            q += internal_weight[c] / W - (stot / (2.0 * W)) * (stot / (2.0 * W));
        }
        return q;
    }
};

inline CommunityAccounting community_accounting(const WeightedGraph& g,
                                                const Partition& p) {
    p.validate(g);
    CommunityAccounting acc;
    acc.internal_weight.assign(p.n_communities, 0.0);
    acc.external_weight.assign(p.n_communities, 0.0);
    acc.total_weight = g.total_weight();
    g.for_each_edge([&](int u, int v, double w) {
        int cu = p.community[u], cv = p.community[v];
        if (cu == cv) {
            acc.internal_weight[cu] += w;
        } else {
            acc.external_weight[cu] += w;
            acc.external_weight[cv] += w;
        }
    });
    return acc;
}

// Newman's weighted modularity of a partition, evaluated per community:
//   Q = sum_c [ in_c / W - ((2 in_c + out_c) / 2W)^2 ]
// which equals the adjacency double sum with the degree-product null model.
inline double weighted_modularity(const WeightedGraph& g, const Partition& p) {
    return community_accounting(g, p).modularity();
}

namespace detail {

// Louvain works on an aggregated multigraph whose nodes carry self-loops
// (folded community internals), which the public WeightedGraph forbids.
struct LouvainGraph {
    std::vector<std::vector<std::pair<int, double>>> adj; // no self entries
    std::vector<double> self_weight;                      // folded internal weight
    std::vector<double> strength;                         // 2*self + cross
    double total = 0.0;                                   // W of the original graph

    int size() const { return static_cast<int>(adj.size()); }

    static LouvainGraph from(const WeightedGraph& g) {
        LouvainGraph lg;
        lg.adj.resize(g.node_count());
        lg.self_weight.assign(g.node_count(), 0.0);
        lg.strength.assign(g.node_count(), 0.0);
        for (int v = 0; v < g.node_count(); ++v) {
            for (const auto& [u, w] : g.neighbors(v)) {
                lg.adj[v].emplace_back(u, w);
                lg.strength[v] += w;
            }
        }
        lg.total = g.total_weight();
        return lg;
    }

    // Collapse communities into single nodes; comm must be contiguous 0..k-1.
    LouvainGraph aggregate(const std::vector<int>& comm, int k) const {
        LouvainGraph out;
        out.adj.resize(k);
        out.self_weight.assign(k, 0.0);
        out.strength.assign(k, 0.0);
        out.total = total;
        std::vector<std::map<int, double>> cross(k);
        for (int v = 0; v < size(); ++v) {
            int cv = comm[v];
            out.self_weight[cv] += self_weight[v];
            for (const auto& [u, w] : adj[v]) {
                int cu = comm[u];
                if (cu == cv) {
                    if (v < u) out.self_weight[cv] += w;
                } else {
                    cross[cv][cu] += w;
                }
            }
        }
        for (int c = 0; c < k; ++c) {
            out.strength[c] = 2.0 * out.self_weight[c];
            for (const auto& [d, w] : cross[c]) {
                out.adj[c].emplace_back(d, w);
                out.strength[c] += w;
            }
        }
        return out;
    }
};

// One round of local moves. Returns the number of moves made.
inline long one_level(const LouvainGraph& lg, std::vector<int>& comm,
                      std::mt19937_64& rng, double gain_tol) {
    const int n = lg.size();
    const double m = lg.total;
    if (m <= 0.0) return 0;

    // community totals of strengths
    std::vector<double> stot(n, 0.0);
    for (int v = 0; v < n; ++v) stot[comm[v]] += lg.strength[v];

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> k_vc(n, 0.0); // scatter: weight from v into community
    std::vector<int> touched;
    touched.reserve(64);

    long total_moves = 0;
    bool moved = true;
    while (moved) {
        moved = false;
        shuffle_vector(order, rng);
        for (int v : order) {
            const int old_c = comm[v];
            touched.clear();
            for (const auto& [u, w] : lg.adj[v]) {
                int c = comm[u];
                if (k_vc[c] == 0.0) touched.push_back(c);
                k_vc[c] += w;
            }
            // take v out of its community
            stot[old_c] -= lg.strength[v];

            // gain of joining community c (v currently isolated):
            //   k_vc / m - stot_c * k_v / (2 m^2)
            const double kv = lg.strength[v];
            double best_gain = k_vc[old_c] / m - stot[old_c] * kv / (2.0 * m * m);
            const double stay_gain = best_gain;
            int best_c = old_c;
            for (int c : touched) {
                if (c == old_c) continue;
                double gain = k_vc[c] / m - stot[c] * kv / (2.0 * m * m);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            if (best_c != old_c && best_gain - stay_gain > gain_tol) {
                comm[v] = best_c;
                ++total_moves;
                moved = true;
            }
            stot[comm[v]] += lg.strength[v];
            for (int c : touched) k_vc[c] = 0.0;
        }
    }
    return total_moves;
}

} // namespace detail

// Louvain community detection with weighted modularity, resolution 1.
// The seed drives the node-visit shuffle; a fixed seed gives a fixed result.
inline Partition louvain(const WeightedGraph& g, std::uint64_t seed,
                         double gain_tol = 1e-9) {
    if (g.empty()) throw error("louvain on an empty graph");
    std::mt19937_64 rng(seed);

    detail::LouvainGraph lg = detail::LouvainGraph::from(g);
    // node_to_comm maps original nodes through all aggregation levels
    std::vector<int> node_to_comm(g.node_count());
    std::iota(node_to_comm.begin(), node_to_comm.end(), 0);

    while (true) {
        std::vector<int> comm(lg.size());
        std::iota(comm.begin(), comm.end(), 0);
        long moves = detail::one_level(lg, comm, rng, gain_tol);
        if (moves == 0) break;

        // renumber level communities contiguously
        std::vector<int> remap(lg.size(), -1);
        int k = 0;
        for (int v = 0; v < lg.size(); ++v)
            if (remap[comm[v]] == -1) remap[comm[v]] = k++;
        for (int v = 0; v < lg.size(); ++v) comm[v] = remap[comm[v]];

        for (int& c : node_to_comm) c = comm[c];
        if (k == lg.size()) break; // no reduction, nothing more to gain
        lg = lg.aggregate(comm, k);
    }

    Partition p;
    p.community = std::move(node_to_comm);
    p.n_communities = 0;
    p.compact();
    return p;
}

struct LouvainResult {
    Partition partition;
    double modularity = -2.0;
    std::uint64_t seed = 0;
};

// Best of `restarts` runs with seeds base_seed .. base_seed+restarts-1,
// by modularity; ties keep the earliest seed.
inline LouvainResult louvain_best(const WeightedGraph& g, int restarts,
                                  std::uint64_t base_seed) {
    if (restarts < 1) throw input_error("restarts must be >= 1");
    LouvainResult best;
    for (int r = 0; r < restarts; ++r) {
        std::uint64_t s = base_seed + static_cast<std::uint64_t>(r);
        Partition p = louvain(g, s);
        double q = weighted_modularity(g, p);
        if (q > best.modularity) {
            best = LouvainResult{std::move(p), q, s};
        }
    }
    return best;
}

// Overlapping community assignment: each node belongs to one or more
// communities. A node with two or more memberships is an overlapping node.
struct Cover {
    std::vector<std::vector<int>> memberships; // sorted, non-empty per node
    int n_communities = 0;

    bool is_overlapping(int v) const { return memberships[v].size() >= 2; }

    std::vector<int> overlapping_nodes() const {
        std::vector<int> out;
        for (int v = 0; v < static_cast<int>(memberships.size()); ++v)
            if (is_overlapping(v)) out.push_back(v);
        return out;
    }

    void validate(const WeightedGraph& g) const {
        if (static_cast<int>(memberships.size()) != g.node_count())
            throw error("cover does not cover the graph");
        for (const auto& ms : memberships)
            if (ms.empty()) throw error("cover has a node with no community");
    }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// All k-cliques, as ascending index vectors, in lexicographic order.
inline void enumerate_cliques(const WeightedGraph& g, int k,
                              std::vector<std::vector<int>>& out) {
    const int n = g.node_count();
    std::vector<std::vector<int>> higher(n); // neighbors with larger index
    for (int v = 0; v < n; ++v)
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)w;
            if (u > v) higher[v].push_back(u);
        }

    std::vector<int> clique;
    std::vector<int> cand;
    // extend clique by common higher-neighbors
    auto extend = [&](auto&& self, const std::vector<int>& candidates) -> void {
        if (static_cast<int>(clique.size()) == k) {
            out.push_back(clique);
            return;
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            int v = candidates[i];
            std::vector<int> next;
            std::set_intersection(candidates.begin() + i + 1, candidates.end(),
                                  higher[v].begin(), higher[v].end(),
                                  std::back_inserter(next));
            if (static_cast<int>(clique.size()) + 1
                    + static_cast<int>(next.size()) < k)
                continue;
            clique.push_back(v);
            self(self, next);
            clique.pop_back();
        }
    };
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    extend(extend, all);
}

} // namespace detail

// Clique percolation on the unweighted skeleton: communities are the
// connected components of the k-clique graph (cliques adjacent when they
// share k-1 nodes); nodes in no k-clique get singleton communities.
inline Cover clique_percolation_cover(const WeightedGraph& g, int k = 3) {
    if (k < 3) throw input_error("clique percolation needs k >= 3");
    std::vector<std::vector<int>> cliques;
    detail::enumerate_cliques(g, k, cliques);

    detail::UnionFind uf(static_cast<int>(cliques.size()));
    {
        // two k-cliques are adjacent iff they share a (k-1)-subset
        std::map<std::vector<int>, int> first_owner;
        std::vector<int> sub;
        for (int ci = 0; ci < static_cast<int>(cliques.size()); ++ci) {
            const auto& cl = cliques[ci];
            for (int drop = 0; drop < k; ++drop) {
                sub.clear();
                for (int j = 0; j < k; ++j)
                    if (j != drop) sub.push_back(cl[j]);
                auto [it, inserted] = first_owner.emplace(sub, ci);
                if (!inserted) uf.unite(it->second, ci);
            }
        }
    }

    Cover cover;
    cover.memberships.resize(g.node_count());
    std::map<int, int> root_to_comm; // percolation roots -> contiguous ids
    for (int ci = 0; ci < static_cast<int>(cliques.size()); ++ci) {
        int root = uf.find(ci);
        auto [it, inserted] =
            root_to_comm.emplace(root, static_cast<int>(root_to_comm.size()));
        int c = it->second;
        (void)inserted;
        for (int v : cliques[ci]) {
            auto& ms = cover.memberships[v];
            if (std::find(ms.begin(), ms.end(), c) == ms.end()) ms.push_back(c);
        }
    }
    int next_id = static_cast<int>(root_to_comm.size());
    for (auto& ms : cover.memberships) {
        if (ms.empty())
            ms.push_back(next_id++);
        else
            std::sort(ms.begin(), ms.end());
    }
    cover.n_communities = next_id;
    return cover;
}

} // namespace mvb

#endif
