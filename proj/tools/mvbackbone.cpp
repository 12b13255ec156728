// mvbackbone: extract and evaluate community-preserving backbones of
// weighted networks. Subcommands: detect, vitality, extract, stats,
// compare, export.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mvb/backbone.hpp"
#include "mvb/community.hpp"
#include "mvb/graph.hpp"
#include "mvb/io.hpp"
#include "mvb/metrics.hpp"
#include "mvb/vitality.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::uint64_t seed = 0;
    int restarts = 20;
    bool quiet = false;
    std::string out_dir = ".";
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const std::string& canonical) {
    std::ostringstream os;
    os << std::hex << std::setfill('0') << std::setw(16) << fnv1a(canonical);
    return os.str();
}

// Every output file starts with this block; no timestamps, so identical
// configurations rewrite identical bytes.
std::vector<std::string> metadata(const GlobalOpts& g, const std::string& cmd,
                                  const std::string& detail) {
    std::string canonical = "cmd=" + cmd + ";seed=" + std::to_string(g.seed)
                            + ";restarts=" + std::to_string(g.restarts) + ";"
                            + detail;
    return {
        std::string("mvbackbone ") + kVersion,
        "command: " + cmd,
        "seed: " + std::to_string(g.seed),
        "restarts: " + std::to_string(g.restarts),
        "config: " + config_hash(canonical),
    };
}

mvb::WeightedGraph load_graph(const std::string& path, bool quiet) {
    mvb::LoadResult r = mvb::load_edge_list(path);
    if (!quiet && r.self_loops_dropped > 0)
        std::cerr << "warning: dropped " << r.self_loops_dropped
                  << " self-loop(s) in " << path << "\n";
    return std::move(r.graph);
}

mvb::Partition resolve_partition(const mvb::WeightedGraph& g,
                                 const std::string& partition_path,
                                 const GlobalOpts& opts) {
    if (!partition_path.empty()) return mvb::load_partition(partition_path, g);
    auto best = mvb::louvain_best(g, opts.restarts, opts.seed);
    if (!opts.quiet)
        std::cerr << "detected communities: n_c=" << best.partition.n_communities
                  << " Q=" << std::fixed << std::setprecision(4)
                  << best.modularity << " (seed " << best.seed << ")\n";
    return best.partition;
}

mvb::Cover resolve_cover(const mvb::WeightedGraph& g,
                         const std::string& cover_path, int cpm_k,
                         const GlobalOpts& opts) {
    if (!cover_path.empty()) return mvb::load_cover(cover_path, g);
    if (!opts.quiet)
        std::cerr << "cover: clique percolation, k=" << cpm_k
                  << " (baseline approximation)\n";
    return mvb::clique_percolation_cover(g, cpm_k);
}

std::string out_path(const GlobalOpts& opts, const std::string& name) {
    std::filesystem::path dir(opts.out_dir);
    return (dir / name).string();
}

mvb::BackboneMethod parse_method(const std::string& name) {
    if (name == "mv" || name == "modularity-vitality")
        return mvb::BackboneMethod::modularity_vitality;
    if (name == "ego") return mvb::BackboneMethod::overlapping_ego;
    if (name == "hubs") return mvb::BackboneMethod::overlapping_hubs;
    if (name == "disparity") return mvb::BackboneMethod::disparity;
    throw mvb::input_error("unknown method '" + name
                           + "' (expected mv, ego, hubs or disparity)");
}

mvb::BackboneResult run_method(const mvb::WeightedGraph& g,
                               mvb::BackboneMethod method,
                               const mvb::BackboneSpec& spec,
                               const std::string& partition_path,
                               const std::string& cover_path, int cpm_k,
                               const GlobalOpts& opts) {
    switch (method) {
        case mvb::BackboneMethod::modularity_vitality:
            return mvb::extract_mv_backbone(
                g, resolve_partition(g, partition_path, opts), spec);
        case mvb::BackboneMethod::overlapping_ego:
            return mvb::extract_overlapping_ego_backbone(
                g, resolve_cover(g, cover_path, cpm_k, opts), spec);
        case mvb::BackboneMethod::overlapping_hubs:
            return mvb::extract_overlapping_hubs_backbone(
                g, resolve_cover(g, cover_path, cpm_k, opts), spec);
        case mvb::BackboneMethod::disparity:
            return mvb::disparity_filter(g, spec.alpha);
    }
    throw mvb::error("unreachable");
}

int cmd_detect(const GlobalOpts& opts, const std::string& in,
               std::string out) {
    mvb::WeightedGraph g = load_graph(in, opts.quiet);
    if (g.edge_count() == 0) throw mvb::input_error("no edges in " + in);
    auto best = mvb::louvain_best(g, opts.restarts, opts.seed);
    if (out.empty()) out = out_path(opts, "partition.txt");
    auto meta = metadata(opts, "detect", "in=" + in);
    meta.push_back("modularity: " + std::to_string(best.modularity));
    meta.push_back("winning-seed: " + std::to_string(best.seed));
    mvb::save_partition(best.partition, g, out, meta);
    if (!opts.quiet)
        std::cout << "Q=" << std::fixed << std::setprecision(4)
                  << best.modularity << " n_c=" << best.partition.n_communities
                  << " seed=" << best.seed << " -> " << out << "\n";
    return 0;
}

int cmd_vitality(const GlobalOpts& opts, const std::string& in,
                 const std::string& partition_path, std::string out) {
    mvb::WeightedGraph g = load_graph(in, opts.quiet);
    if (g.edge_count() == 0) throw mvb::input_error("no edges in " + in);
    mvb::Partition p = resolve_partition(g, partition_path, opts);
    mvb::VitalityScores scores = mvb::modularity_vitality(g, p);
    std::vector<int> order = mvb::rank_by_absolute_vitality(scores, g);

    if (out.empty()) out = out_path(opts, "vitality.tsv");
    std::ofstream os(out);
    if (!os) throw mvb::input_error("cannot write " + out);
    for (const auto& line : metadata(opts, "vitality", "in=" + in))
        os << "# " << line << "\n";
    os << "# label\talpha\tabs_rank\n" << std::setprecision(12);
    for (std::size_t r = 0; r < order.size(); ++r)
        os << g.label(order[r]) << "\t" << scores.alpha[order[r]] << "\t"
           << r + 1 << "\n";
    if (!opts.quiet)
        std::cout << "wrote " << order.size() << " scores -> " << out << "\n";
    return 0;
}

int cmd_extract(const GlobalOpts& opts, const std::string& in,
                const std::string& method_name, double size, double alpha,
                const std::string& partition_path,
                const std::string& cover_path, int cpm_k, std::string out,
                bool trace) {
    mvb::WeightedGraph g = load_graph(in, opts.quiet);
    if (g.edge_count() == 0) throw mvb::input_error("no edges in " + in);

    mvb::BackboneSpec spec;
    spec.method = parse_method(method_name);
    spec.target_fraction = size;
    spec.alpha = alpha;
    spec.seed = opts.seed;

    mvb::BackboneResult result = run_method(g, spec.method, spec,
                                            partition_path, cover_path,
                                            cpm_k, opts);

    if (out.empty()) out = out_path(opts, "backbone.edges");
    std::ostringstream detail;
    detail << "in=" << in << ";method=" << method_name << ";size=" << size
           << ";alpha=" << alpha << ";cpm_k=" << cpm_k;
    auto meta = metadata(opts, "extract", detail.str());
    meta.push_back("method: " + method_name);
    meta.push_back("size-fraction: " + std::to_string(size));
    mvb::save_edge_list(result.graph, out, meta);

    if (trace) {
        std::string trace_path = out + ".trace";
        std::ofstream ts(trace_path);
        if (!ts) throw mvb::input_error("cannot write " + trace_path);
        for (const auto& line : meta) ts << "# " << line << "\n";
        ts << result.method_trace;
        ts << "# removed_order:";
        for (const auto& l : result.removed_order) ts << " " << l;
        ts << "\n";
    }
    if (!opts.quiet)
        std::cout << "backbone: " << result.graph.node_count() << " nodes, "
                  << result.graph.edge_count() << " edges -> " << out << "\n";
    return 0;
}

int cmd_stats(const GlobalOpts& opts, const std::string& in,
              const std::string& partition_path, const std::string& csv,
              int sample_pairs) {
    mvb::WeightedGraph g = load_graph(in, opts.quiet);
    if (g.edge_count() == 0) throw mvb::input_error("no edges in " + in);
    mvb::Partition p = resolve_partition(g, partition_path, opts);
    mvb::MetricsReport r = mvb::descriptive_stats(g, p, sample_pairs, opts.seed);

    std::cout << std::fixed << std::setprecision(3);
    std::cout << "nodes          " << r.n_nodes << "\n"
              << "edges          " << r.n_edges << "\n"
              << "<k>            " << r.avg_weighted_degree << "\n"
              << "<w>            " << r.avg_link_weight << "\n"
              << "<b>            " << r.avg_betweenness << "\n"
              << "Q              " << r.modularity << "\n"
              << "density        " << r.density << "\n"
              << "transitivity   " << r.transitivity << "\n"
              << "assortativity  " << r.assortativity << "\n"
              << "efficiency     " << r.efficiency << "\n"
              << "seed           " << r.seed_used << "\n";

    if (!csv.empty()) {
        std::ofstream os(csv);
        if (!os) throw mvb::input_error("cannot write " + csv);
        os << "n_nodes,n_edges,k_avg,w_avg,b_avg,Q,density,transitivity,"
              "assortativity,efficiency,seed\n"
           << std::setprecision(12) << r.n_nodes << "," << r.n_edges << ","
           << r.avg_weighted_degree << "," << r.avg_link_weight << ","
           << r.avg_betweenness << "," << r.modularity << "," << r.density
           << "," << r.transitivity << "," << r.assortativity << ","
           << r.efficiency << "," << r.seed_used << "\n";
    }
    return 0;
}

int cmd_compare(const GlobalOpts& opts, const std::string& in,
                const std::string& methods_csv, double size, double alpha,
                const std::string& partition_path,
                const std::string& cover_path, int cpm_k,
                const std::string& csv_out, int sample_pairs) {
    mvb::WeightedGraph g = load_graph(in, opts.quiet);
    if (g.edge_count() == 0) throw mvb::input_error("no edges in " + in);

    std::vector<std::string> methods;
    std::istringstream ms(methods_csv);
    std::string tok;
    while (std::getline(ms, tok, ','))
        if (!tok.empty()) methods.push_back(tok);
    if (methods.empty()) throw mvb::input_error("no methods requested");

    std::string network = std::filesystem::path(in).stem().string();
    std::vector<mvb::CompareRow> rows;
    for (const auto& name : methods) {
        mvb::BackboneSpec spec;
        spec.method = parse_method(name);
        spec.target_fraction = size;
        spec.alpha = alpha;
        spec.seed = opts.seed;
        mvb::BackboneResult r = run_method(g, spec.method, spec, partition_path,
                                           cover_path, cpm_k, opts);
        rows.push_back(mvb::compare_row(network, name, r.graph, opts.restarts,
                                        opts.seed, sample_pairs));
    }

    std::cout << mvb::render_compare_table(rows);
    std::string csv_path = csv_out.empty() ? out_path(opts, "compare.csv") : csv_out;
    std::ofstream os(csv_path);
    if (!os) throw mvb::input_error("cannot write " + csv_path);
    os << mvb::render_compare_csv(rows);
    if (!opts.quiet) std::cout << "csv -> " << csv_path << "\n";
    return 0;
}

int cmd_export(const GlobalOpts& opts, const std::string& in,
               const std::string& format, const std::string& partition_path,
               std::string out) {
    mvb::WeightedGraph g = load_graph(in, opts.quiet);
    mvb::Partition p;
    bool have_partition = !partition_path.empty();
    if (have_partition) p = mvb::load_partition(partition_path, g);

    if (out.empty())
        out = out_path(opts, format == "dot" ? "graph.dot" : "graph.edges");
    if (format == "dot") {
        mvb::export_dot(g, out, have_partition ? &p : nullptr);
    } else if (format == "edgelist") {
        mvb::save_edge_list(g, out, metadata(opts, "export", "in=" + in));
    } else {
        throw mvb::input_error("unknown format '" + format + "'");
    }
    if (!opts.quiet) std::cout << "wrote " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"community-preserving backbone extraction for weighted networks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--seed", opts.seed, "base random seed")->capture_default_str();
    app.add_option("--restarts", opts.restarts,
                   "community detection restarts (best modularity wins)")
        ->capture_default_str();
    app.add_flag("--quiet", opts.quiet, "suppress progress chatter");
    app.add_option("--out-dir", opts.out_dir, "directory for default outputs")
        ->capture_default_str();

    std::string in, out, partition_path, cover_path, method = "mv";
    std::string format = "edgelist", methods_csv = "mv,ego", csv_out;
    double size = 0.3, alpha = 0.05;
    int cpm_k = 3, sample_pairs = 0;
    bool trace = false;

    auto* detect = app.add_subcommand("detect", "run community detection");
    detect->add_option("--in", in, "edge list")->required();
    detect->add_option("--out", out, "partition file");

    auto* vitality = app.add_subcommand("vitality", "score nodes by modularity vitality");
    vitality->add_option("--in", in, "edge list")->required();
    vitality->add_option("--partition", partition_path, "partition file (default: detect)");
    vitality->add_option("--out", out, "tsv output");

    auto* extract = app.add_subcommand("extract", "extract a backbone");
    extract->add_option("--in", in, "edge list")->required();
    extract->add_option("--method", method, "mv | ego | hubs | disparity")
        ->capture_default_str();
    extract->add_option("--size", size, "backbone size as a fraction of N")
        ->capture_default_str();
    extract->add_option("--alpha", alpha, "disparity significance threshold")
        ->capture_default_str();
    extract->add_option("--partition", partition_path, "partition file (default: detect)");
    extract->add_option("--cover", cover_path, "cover file (default: clique percolation)");
    extract->add_option("--cpm-k", cpm_k, "clique size for the generated cover")
        ->capture_default_str();
    extract->add_option("--out", out, "backbone edge list");
    extract->add_flag("--trace", trace, "also write the removal trace");

    auto* stats = app.add_subcommand("stats", "descriptive statistics");
    stats->add_option("--in", in, "edge list")->required();
    stats->add_option("--partition", partition_path, "partition file (default: detect)");
    stats->add_option("--csv", csv_out, "also write a csv row");
    stats->add_option("--sample-pairs", sample_pairs,
                      "approximate all-pairs measures from this many sources "
                      "(0 = exact)")->capture_default_str();

    auto* compare = app.add_subcommand("compare", "run several methods and tabulate");
    compare->add_option("--in", in, "edge list")->required();
    compare->add_option("--methods", methods_csv, "comma list of methods")
        ->capture_default_str();
    compare->add_option("--size", size, "backbone size as a fraction of N")
        ->capture_default_str();
    compare->add_option("--alpha", alpha, "disparity significance threshold")
        ->capture_default_str();
    compare->add_option("--partition", partition_path, "partition file (default: detect)");
    compare->add_option("--cover", cover_path, "cover file (default: clique percolation)");
    compare->add_option("--cpm-k", cpm_k, "clique size for the generated cover")
        ->capture_default_str();
    compare->add_option("--csv", csv_out, "csv output path");
    compare->add_option("--sample-pairs", sample_pairs,
                        "approximate betweenness from this many sources "
                        "(0 = exact)")->capture_default_str();

    auto* exp = app.add_subcommand("export", "convert a graph file");
    exp->add_option("--in", in, "edge list")->required();
    exp->add_option("--format", format, "edgelist | dot")->capture_default_str();
    exp->add_option("--partition", partition_path, "partition for dot colors");
    exp->add_option("--out", out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*detect) return cmd_detect(opts, in, out);
        if (*vitality) return cmd_vitality(opts, in, partition_path, out);
        if (*extract)
            return cmd_extract(opts, in, method, size, alpha, partition_path,
                               cover_path, cpm_k, out, trace);
        if (*stats)
            return cmd_stats(opts, in, partition_path, csv_out, sample_pairs);
        if (*compare)
            return cmd_compare(opts, in, methods_csv, size, alpha,
                               partition_path, cover_path, cpm_k, csv_out,
                               sample_pairs);
        if (*exp) return cmd_export(opts, in, format, partition_path, out);
    } catch (const mvb::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
