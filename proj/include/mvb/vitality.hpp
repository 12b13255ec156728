#ifndef MVB_VITALITY_HPP
#define MVB_VITALITY_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mvb/community.hpp"
#include "mvb/errors.hpp"
#include "mvb/graph.hpp"

namespace mvb {

// Per-node modularity vitality: alpha(v) = Q(G) - Q(G minus v), signed.
// Positive scores mark nodes whose presence raises modularity (hub-like),
// negative ones mark nodes that pull communities together (bridge-like).
struct VitalityScores {
    std::vector<double> alpha; // by node index
    double base_modularity = 0.0;
};

// Incremental computation: one pass over the edges builds the per-community
// accounting, then each node contributes its own strength and per-community
// weights to a corrected per-community sum. Work is O(|E| + N * n_c).
//
// For the removed node v with strength k_v and weight E_{v,c} into community
// c, the deleted-node graph has, per community:
//   in'_c  = in_c  - [c == c_v] * E_{v,c_v}
//   out'_c = out_c - (c == c_v ? k_v - E_{v,c_v} : E_{v,c})
//   W'     = W - k_v
// and Q(G minus v) is the usual per-community sum over those. When removal
// leaves no weight (W' == 0) the remainder has modularity 0 by convention.
inline VitalityScores modularity_vitality(const WeightedGraph& g,
                                          const Partition& p) {
    p.validate(g);
    if (g.node_count() < 2)
        throw error("modularity vitality needs at least 2 nodes");

    const int n = g.node_count();
    const int nc = p.n_communities;
    const double W = g.total_weight();

    // One walk over the adjacency builds the per-community accounting and a
    // flat (community, weight) incidence list, so the per-node sweep below
    // touches contiguous memory only.
    CommunityAccounting acc;
    acc.internal_weight.assign(nc, 0.0);
    acc.external_weight.assign(nc, 0.0);
    acc.total_weight = W;
    std::vector<std::size_t> offset(n + 1, 0);
    for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree(v);
    std::vector<int> inc_comm(offset[n]);
    std::vector<double> inc_weight(offset[n]);
    {
        std::size_t i = 0;
        for (int v = 0; v < n; ++v) {
            const int cv = p.community[v];
            for (const auto& [u, w] : g.neighbors(v)) {
                const int cu = p.community[u];
                inc_comm[i] = cu;
                inc_weight[i] = w;
                ++i;
                if (v < u) {
                    if (cv == cu) {
                        acc.internal_weight[cv] += w;
                    } else {
                        acc.external_weight[cv] += w;
                        acc.external_weight[cu] += w;
                    }
                }
            }
        }
    }
    const double q_base = acc.modularity();

    VitalityScores out;
    out.base_modularity = q_base;
    out.alpha.assign(n, 0.0);

    std::vector<double> to_comm(nc, 0.0); // scatter: E_{v,c}
    std::vector<int> touched;
    touched.reserve(64);

    for (int v = 0; v < n; ++v) {
        double kv = 0.0;
        touched.clear();
        for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) {
            const int c = inc_comm[i];
            if (to_comm[c] == 0.0) touched.push_back(c);
            to_comm[c] += inc_weight[i];
            kv += inc_weight[i];
        }
        const int cv = p.community[v];
        const double w_rem = W - kv;

        double q_removed = 0.0;
        if (w_rem > W * 1e-12) {
            const double own_in = to_comm[cv];
            for (int c = 0; c < nc; ++c) {
                double in_c = acc.internal_weight[c];
                double out_c = acc.external_weight[c];
                if (c == cv) {
                    in_c -= own_in;
                    out_c -= kv - own_in;
                } else {
                    out_c -= to_comm[c];
                }
                double stot = 2.0 * in_c + out_c;
                q_removed += in_c / w_rem
                             - (stot / (2.0 * w_rem)) * (stot / (2.0 * w_rem));
            }
        }
        out.alpha[v] = q_base - q_removed;
        for (int c : touched) to_comm[c] = 0.0;
    }
    return out;
}

// Reference implementation: literally delete each node, restrict the
// partition, and evaluate modularity on what is left. Quadratic; exists to
// check the incremental path and for nothing else.
inline VitalityScores modularity_vitality_bruteforce(const WeightedGraph& g,
                                                     const Partition& p) {
    p.validate(g);
    if (g.node_count() < 2)
        throw error("modularity vitality needs at least 2 nodes");

    VitalityScores out;
    out.base_modularity = weighted_modularity(g, p);
    out.alpha.assign(g.node_count(), 0.0);

    for (int v = 0; v < g.node_count(); ++v) {
        WeightedGraph rest = g.remove_node(v);
        Partition rp;
        rp.community.reserve(rest.node_count());
        for (int u = 0; u < rest.node_count(); ++u)
            rp.community.push_back(p.community[g.index_of(rest.label(u))]);
        rp.compact();
        double q_removed =
            rest.total_weight() > 0.0 ? weighted_modularity(rest, rp) : 0.0;
        out.alpha[v] = out.base_modularity - q_removed;
    }
    return out;
}

// Ranking for the extraction loop: ascending absolute score, so the least
// influential nodes come first. Scores are compared on a 1e-12 grid and ties
// fall back to the node label, which makes the order reproducible and
// insensitive to floating-point noise (for instance under uniform weight
// rescaling).
inline std::vector<int> rank_by_absolute_vitality(const VitalityScores& s,
                                                  const WeightedGraph& g) {
    if (s.alpha.empty()) throw error("ranking of empty score set");
    if (static_cast<int>(s.alpha.size()) != g.node_count())
        throw error("score set does not match the graph");

    std::vector<long long> key(s.alpha.size());
    for (std::size_t v = 0; v < s.alpha.size(); ++v)
        key[v] = std::llround(std::fabs(s.alpha[v]) * 1e12);

    std::vector<int> order(s.alpha.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return g.label(a) < g.label(b);
    });
    return order;
}

} // namespace mvb

#endif
