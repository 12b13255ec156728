#include "doctest.h"

#include <random>
#include <sstream>

#include "mvb/io.hpp"
#include "test_helpers.hpp"

using mvb::WeightedGraph;

static mvb::LoadResult load_text(const std::string& text) {
    std::istringstream in(text);
    return mvb::load_edge_list_stream(in, "<test>");
}

TEST_CASE("edge list parsing") {
    SUBCASE("basic") {
        auto r = load_text("a b 2\nb c 3\n");
        CHECK(r.graph.node_count() == 3);
        CHECK(r.graph.edge_count() == 2);
        CHECK(r.graph.total_weight() == doctest::Approx(5.0));
    }
    SUBCASE("duplicate lines merge by summing") {
        auto r = load_text("a b 2\na b 2\n");
        CHECK(r.graph.edge_count() == 1);
        CHECK(r.graph.total_weight() == doctest::Approx(4.0));
        CHECK(r.duplicates_merged == 1);
    }
    SUBCASE("comma separation and missing weight") {
        auto r = load_text("a,b,2.5\nb c\n# comment\n\n");
        CHECK(r.graph.edge_count() == 2);
        CHECK(r.graph.total_weight() == doctest::Approx(3.5));
    }
    SUBCASE("self-loops dropped and counted") {
        auto r = load_text("a a 1\na b 2\n");
        CHECK(r.self_loops_dropped == 1);
        CHECK(r.graph.edge_count() == 1);
        CHECK(r.graph.has_node("a"));
    }
    SUBCASE("malformed line reports its number") {
        try {
            load_text("a b 1\na b 1 junk\n");
            FAIL("expected parse error");
        } catch (const mvb::parse_error& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("a lone label declares an isolated node") {
        auto r = load_text("a b 1\nhermit\n");
        CHECK(r.graph.node_count() == 3);
        CHECK(r.graph.strength("hermit") == 0.0);
    }
    SUBCASE("non-positive weight rejected with line number") {
        try {
            load_text("a b 1\nc d -2\n");
            FAIL("expected parse error");
        } catch (const mvb::parse_error& e) {
            CHECK(e.line() == 2);
        }
        CHECK_THROWS_AS(load_text("a b 0\n"), mvb::parse_error);
        CHECK_THROWS_AS(load_text("a b nan\n"), mvb::parse_error);
    }
    SUBCASE("first-appearance order is the index order") {
        auto r = load_text("z y 1\nx z 1\n");
        CHECK(r.graph.label(0) == "z");
        CHECK(r.graph.label(1) == "y");
        CHECK(r.graph.label(2) == "x");
    }
}

TEST_CASE("edge list round trip preserves N, E and W") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        WeightedGraph g = mvb_test::random_graph(rng, 4 + t);
        std::ostringstream out;
        mvb::save_edge_list(g, out, {"round trip"});
        std::istringstream in(out.str());
        auto r = mvb::load_edge_list_stream(in, "<mem>");
        CHECK(r.graph.node_count() == g.node_count());
        CHECK(r.graph.edge_count() == g.edge_count());
        CHECK(r.graph.total_weight()
              == doctest::Approx(g.total_weight()).epsilon(1e-9));
        for (int v = 0; v < g.node_count(); ++v)
            CHECK(r.graph.strength(g.label(v))
                  == doctest::Approx(g.strength(v)).epsilon(1e-9));
    }
}

TEST_CASE("empty graph exports as a header-only file") {
    WeightedGraph g;
    std::ostringstream out;
    mvb::save_edge_list(g, out);
    CHECK(out.str().rfind("#", 0) == 0);
}

TEST_CASE("dot export lists every node and edge") {
    WeightedGraph tri;
    tri.add_edge("a", "b", 1.0);
    tri.add_edge("b", "c", 2.0);
    tri.add_edge("a", "c", 3.0);
    std::ostringstream out;
    mvb::export_dot(tri, out);
    std::string dot = out.str();
    int nodes = 0, edges = 0;
    std::istringstream lines(dot);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find("[width=") != std::string::npos) ++nodes;
        if (line.find("--") != std::string::npos) ++edges;
    }
    CHECK(nodes == 3);
    CHECK(edges == 3);
    CHECK(dot.find("penwidth") != std::string::npos);
}

TEST_CASE("partition save/load round trip") {
    WeightedGraph g = mvb_test::two_triangles_disjoint();
    mvb::Partition p = mvb_test::triangle_partition(g);
    std::ostringstream out;
    mvb::save_partition(p, g, out, {"test"});
    std::istringstream in(out.str());
    mvb::Partition q = mvb::load_partition_stream(in, "<mem>", g);
    CHECK(q.community == p.community);
    CHECK(q.n_communities == p.n_communities);
}

TEST_CASE("cover parsing") {
    WeightedGraph g;
    g.add_edge("a", "b", 1.0);
    g.add_edge("b", "c", 1.0);

    SUBCASE("overlap is read back") {
        std::istringstream in("a 0\nb 0,1\nc 1\n");
        mvb::Cover cover = mvb::load_cover_stream(in, "<mem>", g);
        CHECK(cover.is_overlapping(g.index_of("b")));
        CHECK_FALSE(cover.is_overlapping(g.index_of("a")));
        CHECK(cover.n_communities == 2);
    }
    SUBCASE("missing membership is a parse error with line number") {
        std::istringstream in("a 0\nb\nc 1\n");
        try {
            mvb::load_cover_stream(in, "<mem>", g);
            FAIL("expected parse error");
        } catch (const mvb::parse_error& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("unknown label is rejected") {
        std::istringstream in("a 0\nb 0\nc 1\nzz 0\n");
        CHECK_THROWS_AS(mvb::load_cover_stream(in, "<mem>", g),
                        mvb::parse_error);
    }
    SUBCASE("uncovered node is rejected") {
        std::istringstream in("a 0\nb 0\n");
        CHECK_THROWS_AS(mvb::load_cover_stream(in, "<mem>", g),
                        mvb::input_error);
    }
}
