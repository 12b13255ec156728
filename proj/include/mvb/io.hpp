#ifndef MVB_IO_HPP
#define MVB_IO_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "mvb/community.hpp"
#include "mvb/errors.hpp"
#include "mvb/graph.hpp"

namespace mvb {

struct LoadResult {
    WeightedGraph graph;
    int self_loops_dropped = 0;
    int duplicates_merged = 0;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::string s = line;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::vector<std::string> fields;
    std::string f;
    while (is >> f) fields.push_back(f);
    return fields;
}

inline double parse_weight(const std::string& token, const std::string& file,
                           int line_no) {
    std::size_t pos = 0;
    double w;
    try {
        w = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw parse_error(file, line_no, "bad weight '" + token + "'");
    }
    if (pos != token.size())
        throw parse_error(file, line_no, "bad weight '" + token + "'");
    if (!std::isfinite(w) || w <= 0.0)
        throw parse_error(file, line_no,
                          "weight must be positive and finite, got '" + token + "'");
    return w;
}

} // namespace detail

// Weighted edge list: UTF-8 text, '#' comment lines, one edge per line,
// `src dst [weight]`, whitespace or comma separated; the weight defaults
// to 1.0. Duplicate edges merge by summing weights; self-loops are dropped
// and counted.
inline LoadResult load_edge_list_stream(std::istream& in,
                                        const std::string& name) {
    LoadResult result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto fields = detail::split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() == 1) { // lone label: an isolated node
            result.graph.add_node(fields[0]);
            continue;
        }
        if (fields.size() > 3)
            throw parse_error(name, line_no,
                              "expected 'src dst [weight]', got "
                              + std::to_string(fields.size()) + " fields");
        double w = fields.size() == 3
                       ? detail::parse_weight(fields[2], name, line_no)
                       : 1.0;
        int u = result.graph.add_node(fields[0]);
        int v = result.graph.add_node(fields[1]);
        if (u == v) {
            ++result.self_loops_dropped;
            continue;
        }
        long long before = result.graph.edge_count();
        result.graph.add_edge(u, v, w);
        if (result.graph.edge_count() == before) ++result.duplicates_merged;
    }
    return result;
}

inline LoadResult load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return load_edge_list_stream(in, path);
}

// Round-trip safe: weights print with enough digits to reparse exactly and
// isolated nodes appear as lone labels so the node set is preserved.
inline void save_edge_list(const WeightedGraph& g, std::ostream& out,
                           const std::vector<std::string>& header_lines = {}) {
    for (const auto& h : header_lines) out << "# " << h << "\n";
    if (g.empty()) out << "# empty graph\n";
    out << std::setprecision(17);
    for (int v = 0; v < g.node_count(); ++v)
        if (g.degree(v) == 0) out << g.label(v) << "\n";
    g.for_each_edge([&](int u, int v, double w) {
        out << g.label(u) << " " << g.label(v) << " " << w << "\n";
    });
}

inline void save_edge_list(const WeightedGraph& g, const std::string& path,
                           const std::vector<std::string>& header_lines = {}) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    save_edge_list(g, out, header_lines);
}

// DOT export: node width scales with strength, edge penwidth with weight;
// with a partition, community ids map to fill colors.
inline void export_dot(const WeightedGraph& g, std::ostream& out,
                       const Partition* partition = nullptr) {
    if (partition) partition->validate(g);
    double max_strength = 0.0, max_weight = 0.0;
    for (int v = 0; v < g.node_count(); ++v)
        max_strength = std::max(max_strength, g.strength(v));
    g.for_each_edge(
        [&](int, int, double w) { max_weight = std::max(max_weight, w); });

    out << "graph backbone {\n  node [shape=circle style=filled];\n";
    out << std::fixed << std::setprecision(3);
    for (int v = 0; v < g.node_count(); ++v) {
        double width =
            max_strength > 0.0 ? 0.2 + 0.8 * g.strength(v) / max_strength : 0.2;
        out << "  \"" << g.label(v) << "\" [width=" << width;
        if (partition)
            out << " colorscheme=set312 fillcolor="
                << partition->community[v] % 12 + 1;
        out << "];\n";
    }
    g.for_each_edge([&](int u, int v, double w) {
        double pen = max_weight > 0.0 ? 0.5 + 3.5 * w / max_weight : 1.0;
        out << "  \"" << g.label(u) << "\" -- \"" << g.label(v)
            << "\" [penwidth=" << pen << "];\n";
    });
    out << "}\n";
}

inline void export_dot(const WeightedGraph& g, const std::string& path,
                       const Partition* partition = nullptr) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    export_dot(g, out, partition);
}

// Partition/cover text format: one line per node, `label c1[,c2,...]`,
// community ids as decimal integers.
inline void save_partition(const Partition& p, const WeightedGraph& g,
                           std::ostream& out,
                           const std::vector<std::string>& header_lines = {}) {
    p.validate(g);
    for (const auto& h : header_lines) out << "# " << h << "\n";
    for (int v = 0; v < g.node_count(); ++v)
        out << g.label(v) << " " << p.community[v] << "\n";
}

inline void save_partition(const Partition& p, const WeightedGraph& g,
                           const std::string& path,
                           const std::vector<std::string>& header_lines = {}) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    save_partition(p, g, out, header_lines);
}

namespace detail {

inline int parse_community_id(const std::string& token, const std::string& file,
                              int line_no) {
    std::size_t pos = 0;
    int c;
    try {
        c = std::stoi(token, &pos);
    } catch (const std::exception&) {
        throw parse_error(file, line_no, "bad community id '" + token + "'");
    }
    if (pos != token.size() || c < 0)
        throw parse_error(file, line_no, "bad community id '" + token + "'");
    return c;
}

// Shared reader for partitions (single membership) and covers.
inline std::vector<std::vector<int>> read_memberships(std::istream& in,
                                                      const std::string& name,
                                                      const WeightedGraph& g,
                                                      bool allow_multi) {
    std::vector<std::vector<int>> memberships(g.node_count());
    std::vector<char> seen(g.node_count(), 0);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // label then comma-joined ids; commas also accepted as field breaks
        std::istringstream is(line);
        std::string label, rest;
        if (!(is >> label)) continue;
        if (!(is >> rest))
            throw parse_error(name, line_no, "missing community for '" + label + "'");
        std::string extra;
        if (is >> extra)
            throw parse_error(name, line_no, "trailing fields after memberships");
        if (!g.has_node(label))
            throw parse_error(name, line_no, "unknown node '" + label + "'");
        int v = g.index_of(label);
        if (seen[v])
            throw parse_error(name, line_no, "duplicate entry for '" + label + "'");
        seen[v] = 1;
        std::istringstream ms(rest);
        std::string tok;
        while (std::getline(ms, tok, ','))
            if (!tok.empty())
                memberships[v].push_back(parse_community_id(tok, name, line_no));
        if (memberships[v].empty())
            throw parse_error(name, line_no, "empty membership for '" + label + "'");
        if (!allow_multi && memberships[v].size() > 1)
            throw parse_error(name, line_no,
                              "node '" + label + "' has several communities in a partition");
    }
    for (int v = 0; v < g.node_count(); ++v)
        if (!seen[v])
            throw input_error(name + ": node '" + g.label(v) + "' is missing");
    return memberships;
}

} // namespace detail

inline Partition load_partition_stream(std::istream& in, const std::string& name,
                                       const WeightedGraph& g) {
    auto ms = detail::read_memberships(in, name, g, false);
    Partition p;
    p.community.reserve(g.node_count());
    for (const auto& m : ms) p.community.push_back(m.front());
    p.compact();
    return p;
}

inline Partition load_partition(const std::string& path, const WeightedGraph& g) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return load_partition_stream(in, path, g);
}

inline Cover load_cover_stream(std::istream& in, const std::string& name,
                               const WeightedGraph& g) {
    Cover cover;
    cover.memberships = detail::read_memberships(in, name, g, true);
    // renumber contiguously in order of first appearance
    std::map<int, int> remap;
    for (auto& ms : cover.memberships) {
        for (int& c : ms) {
            auto [it, ins] = remap.emplace(c, static_cast<int>(remap.size()));
            (void)ins;
            c = it->second;
        }
        std::sort(ms.begin(), ms.end());
        ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    }
    cover.n_communities = static_cast<int>(remap.size());
    return cover;
}

inline Cover load_cover(const std::string& path, const WeightedGraph& g) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return load_cover_stream(in, path, g);
}

inline void save_cover(const Cover& cover, const WeightedGraph& g,
                       std::ostream& out,
                       const std::vector<std::string>& header_lines = {}) {
    cover.validate(g);
    for (const auto& h : header_lines) out << "# " << h << "\n";
    for (int v = 0; v < g.node_count(); ++v) {
        out << g.label(v) << " ";
        for (std::size_t i = 0; i < cover.memberships[v].size(); ++i)
            out << (i ? "," : "") << cover.memberships[v][i];
        out << "\n";
    }
}

inline void save_cover(const Cover& cover, const WeightedGraph& g,
                       const std::string& path,
                       const std::vector<std::string>& header_lines = {}) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    save_cover(cover, g, out, header_lines);
}

} // namespace mvb

#endif
