#ifndef MVB_METRICS_HPP
#define MVB_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "mvb/community.hpp"
#include "mvb/errors.hpp"
#include "mvb/graph.hpp"
#include "mvb/rng.hpp"

namespace mvb {

namespace detail {

// 0 or >= n means every source; otherwise a seeded sample without
// replacement, for approximate all-pairs runs on large graphs.
inline std::vector<int> source_set(int n, int sample_sources,
                                   std::uint64_t seed) {
    std::vector<int> sources(n);
    std::iota(sources.begin(), sources.end(), 0);
    if (sample_sources <= 0 || sample_sources >= n) return sources;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < sample_sources; ++i) {
        int j = i + static_cast<int>(uniform_below(rng, n - i));
        std::swap(sources[i], sources[j]);
    }
    sources.resize(sample_sources);
    return sources;
}

} // namespace detail

// Brandes accumulation on the unweighted skeleton. Returns per-node values
// normalized by (N-1)(N-2)/2 pairs (undirected convention); pairs in
// different components contribute nothing. With sample_sources > 0 the
// source sum is estimated from that many seeded sources and rescaled.
inline std::vector<double> betweenness_centrality(const WeightedGraph& g,
                                                  int sample_sources = 0,
                                                  std::uint64_t seed = 0) {
    const int n = g.node_count();
    std::vector<double> bc(n, 0.0);
    if (n < 3) return bc;

    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)w;
            adj[v].push_back(u);
        }

    std::vector<int> dist(n);
    std::vector<double> sigma(n); // path counts; double avoids overflow
    std::vector<double> delta(n);
    std::vector<std::vector<int>> pred(n);
    std::vector<int> order; // visit order, for the reverse sweep
    order.reserve(n);

    const std::vector<int> sources = detail::source_set(n, sample_sources, seed);
    for (int s : sources) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int u : adj[v]) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
                if (dist[u] == dist[v] + 1) {
                    sigma[u] += sigma[v];
                    pred[u].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int w = *it;
            for (int v : pred[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    // each unordered pair was counted from both endpoints; a sampled run
    // rescales the source sum to the full population first
    const double upscale = static_cast<double>(n) / sources.size();
    const double scale = upscale / (static_cast<double>(n - 1) * (n - 2));
    for (double& x : bc) x *= scale;
    return bc;
}

// Mean normalized betweenness over the nodes.
inline double avg_betweenness(const WeightedGraph& g, int sample_sources = 0,
                              std::uint64_t seed = 0) {
    if (g.node_count() < 2) throw error("betweenness needs at least 2 nodes");
    auto bc = betweenness_centrality(g, sample_sources, seed);
    double sum = 0.0;
    for (double x : bc) sum += x;
    return sum / g.node_count();
}

// Fresh community detection on a backbone (best of `restarts` Louvain runs),
// then its weighted modularity.
inline double backbone_modularity(const WeightedGraph& g, int restarts,
                                  std::uint64_t seed) {
    return louvain_best(g, restarts, seed).modularity;
}

inline double density(const WeightedGraph& g) {
    const double n = g.node_count();
    if (n < 2) return 0.0;
    return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

// 3 * triangles / connected triples, unweighted skeleton.
inline double transitivity(const WeightedGraph& g) {
    const int n = g.node_count();
    long long triples = 0;
    long long triangles3 = 0; // counts each triangle once
    std::vector<std::vector<int>> higher(n);
    for (int v = 0; v < n; ++v) {
        long long d = g.degree(v);
        triples += d * (d - 1) / 2;
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)w;
            if (u > v) higher[v].push_back(u);
        }
    }
    std::vector<int> common;
    for (int v = 0; v < n; ++v)
        for (int u : higher[v]) {
            common.clear();
            std::set_intersection(higher[v].begin(), higher[v].end(),
                                  higher[u].begin(), higher[u].end(),
                                  std::back_inserter(common));
            triangles3 += static_cast<long long>(common.size());
        }
    if (triples == 0) return 0.0;
    return 3.0 * static_cast<double>(triangles3) / static_cast<double>(triples);
}

// Degree assortativity: Pearson correlation of endpoint degrees over the
// directed edge list (each edge contributes both orientations). Defined as 0
// when the degree variance vanishes (regular graphs).
inline double degree_assortativity(const WeightedGraph& g) {
    double sx = 0, sxx = 0, sxy = 0;
    long long m2 = 0;
    g.for_each_edge([&](int u, int v, double w) {
        (void)w;
        double du = g.degree(u), dv = g.degree(v);
        sx += du + dv;
        sxx += du * du + dv * dv;
        sxy += 2.0 * du * dv;
        m2 += 2;
    });
    if (m2 == 0) return 0.0;
    double mean = sx / m2;
    double var = sxx / m2 - mean * mean;
    double cov = sxy / m2 - mean * mean;
    if (var <= 1e-15) return 0.0;
    return cov / var;
}

// Global efficiency: mean of 1/d(i,j) over ordered pairs, unweighted hops,
// unreachable pairs contribute 0. Sampling works per source row.
inline double global_efficiency(const WeightedGraph& g, int sample_sources = 0,
                                std::uint64_t seed = 0) {
    const int n = g.node_count();
    if (n < 2) return 0.0;
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)w;
            adj[v].push_back(u);
        }
    double sum = 0.0;
    std::vector<int> dist(n);
    const std::vector<int> sources = detail::source_set(n, sample_sources, seed);
    for (int s : sources) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (v != s) sum += 1.0 / dist[v];
            for (int u : adj[v])
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
        }
    }
    return sum / (static_cast<double>(sources.size()) * (n - 1));
}

struct MetricsReport {
    int n_nodes = 0;
    long long n_edges = 0;
    double avg_weighted_degree = 0.0; // <k>
    double avg_link_weight = 0.0;     // <w> = <k>/2
    double avg_betweenness = 0.0;     // <b>
    double modularity = 0.0;          // Q
    double density = 0.0;             // omega
    double transitivity = 0.0;        // zeta
    double assortativity = 0.0;       // k_nn(k)
    double efficiency = 0.0;          // epsilon
    std::uint64_t seed_used = 0;
};

// Full descriptive row; Q comes from the supplied partition. sample_sources
// approximates the two all-pairs measures on large graphs (0 = exact).
inline MetricsReport descriptive_stats(const WeightedGraph& g,
                                       const Partition& p,
                                       int sample_sources = 0,
                                       std::uint64_t seed = 0) {
    if (g.node_count() < 2) throw error("descriptive stats need at least 2 nodes");
    p.validate(g);
    MetricsReport r;
    r.n_nodes = g.node_count();
    r.n_edges = g.edge_count();
    r.avg_weighted_degree = avg_weighted_degree(g);
    r.avg_link_weight = avg_link_weight(g);
    r.avg_betweenness = avg_betweenness(g, sample_sources, seed);
    r.modularity = weighted_modularity(g, p);
    r.density = density(g);
    r.transitivity = transitivity(g);
    r.assortativity = degree_assortativity(g);
    r.efficiency = global_efficiency(g, sample_sources, seed);
    r.seed_used = seed;
    return r;
}

// One comparison line: the four backbone quality measures plus sizes.
struct CompareRow {
    std::string network;
    std::string method;
    int n_nodes = 0;
    long long n_edges = 0;
    double k_avg = 0.0;
    double w_avg = 0.0;
    double b_avg = 0.0;
    double q = 0.0;
    std::uint64_t seed = 0;
};

inline CompareRow compare_row(const std::string& network,
                              const std::string& method,
                              const WeightedGraph& backbone, int restarts,
                              std::uint64_t seed, int sample_sources = 0) {
    CompareRow row;
    row.network = network;
    row.method = method;
    row.n_nodes = backbone.node_count();
    row.n_edges = backbone.edge_count();
    row.k_avg = avg_weighted_degree(backbone);
    row.w_avg = avg_link_weight(backbone);
    row.b_avg = backbone.node_count() >= 2
                    ? avg_betweenness(backbone, sample_sources, seed)
                    : 0.0;
    row.q = backbone_modularity(backbone, restarts, seed);
    row.seed = seed;
    return row;
}

namespace detail {

inline std::string fmt_metric(double x, bool winner) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << x;
    return winner ? "*" + os.str() + "*" : os.str();
}

} // namespace detail

// Aligned text table, one row per network/method; when a network has several
// rows the best value of each measure is emphasised with asterisks.
inline std::string render_compare_table(const std::vector<CompareRow>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(16) << "network" << std::setw(11) << "method"
       << std::setw(7) << "nodes" << std::setw(7) << "edges"
       << std::setw(10) << "<k>" << std::setw(10) << "<w>"
       << std::setw(10) << "<b>" << std::setw(10) << "Q" << "seed\n";
    for (const auto& row : rows) {
        // winners among the rows of the same network, only if compared
        int group = 0;
        double bk = row.k_avg, bw = row.w_avg, bb = row.b_avg, bq = row.q;
        for (const auto& other : rows)
            if (other.network == row.network) {
                ++group;
                bk = std::max(bk, other.k_avg);
                bw = std::max(bw, other.w_avg);
                bb = std::max(bb, other.b_avg);
                bq = std::max(bq, other.q);
            }
        bool mark = group >= 2;
        os << std::left << std::setw(16) << row.network << std::setw(11)
           << row.method << std::setw(7) << row.n_nodes << std::setw(7)
           << row.n_edges << std::setw(10)
           << detail::fmt_metric(row.k_avg, mark && row.k_avg == bk)
           << std::setw(10)
           << detail::fmt_metric(row.w_avg, mark && row.w_avg == bw)
           << std::setw(10)
           << detail::fmt_metric(row.b_avg, mark && row.b_avg == bb)
           << std::setw(10) << detail::fmt_metric(row.q, mark && row.q == bq)
           << row.seed << "\n";
    }
    return os.str();
}

inline std::string render_compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream os;
    os << "network,method,n_nodes,n_edges,k_avg,w_avg,b_avg,Q,seed\n";
    os << std::setprecision(12);
    for (const auto& row : rows)
        os << row.network << "," << row.method << "," << row.n_nodes << ","
           << row.n_edges << "," << row.k_avg << "," << row.w_avg << ","
           << row.b_avg << "," << row.q << "," << row.seed << "\n";
    return os.str();
}

} // namespace mvb

#endif
