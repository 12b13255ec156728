#ifndef MVB_GRAPH_HPP
#define MVB_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "mvb/errors.hpp"

namespace mvb {

// Undirected weighted simple graph. Node labels are strings as read from the
// input; internally nodes get dense indices in order of first appearance and
// that order is preserved by every subgraph operation, so exports keep the
// original labels. No self-loops, weights strictly positive and finite,
// symmetric adjacency. Immutable from a reader's point of view once built;
// mutating operations return new graphs.
//
// Adjacency lists are vectors of (neighbor index, weight) kept sorted by
// index: traversal order is deterministic and contiguous in memory.
class WeightedGraph {
public:
    using Neighbor = std::pair<int, double>;

    int add_node(const std::string& label) {
        auto it = index_.find(label);
        if (it != index_.end()) return it->second;
        int idx = static_cast<int>(labels_.size());
        labels_.push_back(label);
        adj_.emplace_back();
        index_.emplace(label, idx);
        return idx;
    }

    // Merges duplicates by summing weights.
    void add_edge(int u, int v, double w) {
        check_index(u);
        check_index(v);
        if (u == v) throw error("self-loop rejected: " + labels_[u]);
        if (!(w > 0.0) || !std::isfinite(w))
            throw error("edge weight must be positive and finite");
        auto it = find_slot(u, v);
        if (it != adj_[u].end() && it->first == v) {
            it->second += w;
            find_slot(v, u)->second += w;
        } else {
            adj_[u].insert(it, {v, w});
            adj_[v].insert(find_slot(v, u), {u, w});
            ++edge_count_;
        }
        total_weight_ += w;
    }

    void add_edge(const std::string& u, const std::string& v, double w) {
        int ui = add_node(u);
        int vi = add_node(v);
        add_edge(ui, vi, w);
    }

    int node_count() const { return static_cast<int>(labels_.size()); }
    long long edge_count() const { return edge_count_; }
    double total_weight() const { return total_weight_; }
    bool empty() const { return labels_.empty(); }

    const std::string& label(int v) const {
        check_index(v);
        return labels_[v];
    }

    const std::vector<std::string>& labels() const { return labels_; }

    bool has_node(const std::string& label) const {
        return index_.count(label) != 0;
    }

    int index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw lookup_error(label);
        return it->second;
    }

    const std::vector<Neighbor>& neighbors(int v) const {
        check_index(v);
        return adj_[v];
    }

    int degree(int v) const {
        check_index(v);
        return static_cast<int>(adj_[v].size());
    }

    double strength(int v) const {
        check_index(v);
        double s = 0.0;
        for (const auto& kv : adj_[v]) s += kv.second;
        return s;
    }

    double strength(const std::string& label) const {
        return strength(index_of(label));
    }

    double edge_weight(int u, int v) const {
        check_index(u);
        auto it = std::lower_bound(
            adj_[u].begin(), adj_[u].end(), v,
            [](const Neighbor& n, int key) { return n.first < key; });
        return it == adj_[u].end() || it->first != v ? 0.0 : it->second;
    }

    template <typename Fn> // Fn(int u, int v, double w) with u < v
    void for_each_edge(Fn&& fn) const {
        for (int u = 0; u < node_count(); ++u)
            for (const auto& [v, w] : adj_[u])
                if (u < v) fn(u, v, w);
    }

    double recompute_total_weight() const {
        double w = 0.0;
        for_each_edge([&](int, int, double ew) { w += ew; });
        return w;
    }

    WeightedGraph remove_node(int v) const {
        check_index(v);
        std::vector<bool> keep(labels_.size(), true);
        keep[v] = false;
        return induced(keep);
    }

    WeightedGraph remove_node(const std::string& label) const {
        return remove_node(index_of(label));
    }

    // Nodes in keep plus all edges with both endpoints in keep.
    WeightedGraph induced_subgraph(const std::vector<int>& keep) const {
        std::vector<bool> mask(labels_.size(), false);
        for (int v : keep) {
            check_index(v);
            mask[v] = true;
        }
        return induced(mask);
    }

    WeightedGraph induced_subgraph(const std::vector<std::string>& keep) const {
        std::vector<int> idx;
        idx.reserve(keep.size());
        for (const auto& l : keep) idx.push_back(index_of(l));
        return induced_subgraph(idx);
    }

    // Components as index lists, largest first; equal sizes ordered by their
    // smallest node index. Each component's nodes are in ascending order.
    std::vector<std::vector<int>> connected_components() const {
        std::vector<std::vector<int>> comps;
        std::vector<bool> seen(labels_.size(), false);
        for (int s = 0; s < node_count(); ++s) {
            if (seen[s]) continue;
            std::vector<int> comp;
            std::queue<int> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                comp.push_back(x);
                for (const auto& [y, w] : adj_[x]) {
                    (void)w;
                    if (!seen[y]) {
                        seen[y] = true;
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

    bool is_connected() const {
        if (node_count() <= 1) return true;
        return connected_components().size() == 1;
    }

    WeightedGraph largest_connected_component() const {
        if (empty()) return WeightedGraph{};
        auto comps = connected_components();
        return induced_subgraph(comps.front());
    }

private:
    void check_index(int v) const {
        if (v < 0 || v >= node_count())
            throw lookup_error("#" + std::to_string(v));
    }

    std::vector<Neighbor>::iterator find_slot(int u, int v) {
        return std::lower_bound(
            adj_[u].begin(), adj_[u].end(), v,
            [](const Neighbor& n, int key) { return n.first < key; });
    }

    WeightedGraph induced(const std::vector<bool>& mask) const {
        WeightedGraph out;
        for (int v = 0; v < node_count(); ++v)
            if (mask[v]) out.add_node(labels_[v]);
        for (int u = 0; u < node_count(); ++u) {
            if (!mask[u]) continue;
            for (const auto& [v, w] : adj_[u])
                if (u < v && mask[v])
                    out.add_edge(out.index_of(labels_[u]), out.index_of(labels_[v]), w);
        }
        return out;
    }

    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<Neighbor>> adj_;
    long long edge_count_ = 0;
    double total_weight_ = 0.0;
};

// Mean node strength, 2W/N. Errors on the empty graph.
inline double avg_weighted_degree(const WeightedGraph& g) {
    if (g.empty()) throw error("average weighted degree of an empty graph");
    return 2.0 * g.total_weight() / g.node_count();
}

// Total weight over unordered pairs divided by N; always half the average
// weighted degree.
inline double avg_link_weight(const WeightedGraph& g) {
    if (g.empty()) throw error("average link weight of an empty graph");
    return g.total_weight() / g.node_count();
}

} // namespace mvb

#endif
