#include "doctest.h"

#include <random>

#include "mvb/graph.hpp"
#include "test_helpers.hpp"

using mvb::WeightedGraph;

TEST_CASE("strength of simple shapes") {
    WeightedGraph tri;
    tri.add_edge("a", "b", 1.0);
    tri.add_edge("b", "c", 1.0);
    tri.add_edge("a", "c", 1.0);
    CHECK(tri.strength("a") == doctest::Approx(2.0));
    CHECK(tri.strength("b") == doctest::Approx(2.0));

    WeightedGraph star;
    star.add_edge("hub", "l1", 1.0);
    star.add_edge("hub", "l2", 2.0);
    star.add_edge("hub", "l3", 3.0);
    star.add_edge("hub", "l4", 4.0);
    CHECK(star.strength("hub") == doctest::Approx(10.0));
    CHECK_THROWS_AS(star.strength("nope"), mvb::lookup_error);
}

TEST_CASE("isolated node has zero strength") {
    WeightedGraph g;
    g.add_node("alone");
    g.add_edge("a", "b", 2.0);
    CHECK(g.strength("alone") == 0.0);
}

TEST_CASE("edges merge and self-loops are rejected") {
    WeightedGraph g;
    g.add_edge("a", "b", 2.0);
    g.add_edge("b", "a", 2.0);
    CHECK(g.edge_count() == 1);
    CHECK(g.edge_weight(g.index_of("a"), g.index_of("b")) == doctest::Approx(4.0));
    CHECK(g.total_weight() == doctest::Approx(4.0));
    CHECK_THROWS(g.add_edge("a", "a", 1.0));
    CHECK_THROWS(g.add_edge("a", "c", 0.0));
    CHECK_THROWS(g.add_edge("a", "c", -1.0));
}

TEST_CASE("remove_node keeps the conservation identity") {
    WeightedGraph path;
    path.add_edge("a", "b", 1.5);
    path.add_edge("b", "c", 2.5);
    WeightedGraph rest = path.remove_node("b");
    CHECK(rest.node_count() == 2);
    CHECK(rest.edge_count() == 0);
    CHECK(rest.total_weight() == doctest::Approx(0.0));

    WeightedGraph tri;
    tri.add_edge("a", "b", 1.0);
    tri.add_edge("b", "c", 1.0);
    tri.add_edge("a", "c", 1.0);
    WeightedGraph rest2 = tri.remove_node("a");
    CHECK(rest2.edge_count() == 1);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        WeightedGraph g = mvb_test::random_graph(rng, 12);
        int v = static_cast<int>(mvb::uniform_below(rng, g.node_count()));
        double expect = g.total_weight() - g.strength(v);
        WeightedGraph rest3 = g.remove_node(v);
        CHECK(rest3.total_weight() == doctest::Approx(expect).epsilon(1e-12));
        CHECK(rest3.node_count() == g.node_count() - 1);
        CHECK(rest3.largest_connected_component().node_count() < g.node_count());
    }
}

TEST_CASE("largest connected component") {
    SUBCASE("connected graph is unchanged") {
        WeightedGraph g = mvb_test::two_triangles_bridge();
        WeightedGraph l = g.largest_connected_component();
        CHECK(l.node_count() == g.node_count());
        CHECK(l.edge_count() == g.edge_count());
    }
    SUBCASE("sizes 5 vs 3 picks 5") {
        WeightedGraph g;
        for (int i = 0; i < 4; ++i)
            g.add_edge("p" + std::to_string(i), "p" + std::to_string(i + 1), 1.0);
        g.add_edge("x", "y", 1.0);
        g.add_edge("y", "z", 1.0);
        CHECK(g.largest_connected_component().node_count() == 5);
    }
    SUBCASE("tie goes to the earliest node") {
        WeightedGraph g;
        g.add_edge("t1a", "t1b", 1.0);
        g.add_edge("t1b", "t1c", 1.0);
        g.add_edge("t1a", "t1c", 1.0);
        g.add_edge("t2a", "t2b", 1.0);
        g.add_edge("t2b", "t2c", 1.0);
        g.add_edge("t2a", "t2c", 1.0);
        g.add_node("isolated");
        WeightedGraph l = g.largest_connected_component();
        CHECK(l.node_count() == 3);
        CHECK(l.has_node("t1a"));
    }
    SUBCASE("empty graph maps to empty graph") {
        WeightedGraph g;
        CHECK(g.largest_connected_component().node_count() == 0);
    }
}

TEST_CASE("induced subgraph") {
    WeightedGraph square;
    square.add_edge("a", "b", 1.0);
    square.add_edge("b", "c", 2.0);
    square.add_edge("c", "d", 3.0);
    square.add_edge("d", "a", 4.0);

    SUBCASE("keeping everything is the identity") {
        WeightedGraph s = square.induced_subgraph(square.labels());
        CHECK(s.node_count() == 4);
        CHECK(s.edge_count() == 4);
        CHECK(s.total_weight() == doctest::Approx(10.0));
    }
    SUBCASE("empty keep set gives the empty graph") {
        WeightedGraph s = square.induced_subgraph(std::vector<std::string>{});
        CHECK(s.node_count() == 0);
        CHECK(s.edge_count() == 0);
    }
    SUBCASE("corner cut gives a path") {
        WeightedGraph s =
            square.induced_subgraph(std::vector<std::string>{"a", "b", "c"});
        CHECK(s.node_count() == 3);
        CHECK(s.edge_count() == 2);
        CHECK(s.total_weight() == doctest::Approx(3.0));
    }
    SUBCASE("unknown node errors") {
        CHECK_THROWS_AS(
            square.induced_subgraph(std::vector<std::string>{"a", "zz"}),
            mvb::lookup_error);
    }
}

TEST_CASE("handshake identity: sum of strengths equals 2W") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        WeightedGraph g = mvb_test::random_graph(rng, 5 + t % 18);
        double sum = 0.0;
        for (int v = 0; v < g.node_count(); ++v) sum += g.strength(v);
        CHECK(sum == doctest::Approx(2.0 * g.total_weight()).epsilon(1e-12));
        CHECK(g.recompute_total_weight()
              == doctest::Approx(g.total_weight()).epsilon(1e-9));
    }
}

TEST_CASE("node labels survive subgraph operations") {
    WeightedGraph g = mvb_test::two_triangles_bridge();
    WeightedGraph s = g.remove_node("a").largest_connected_component();
    for (int v = 0; v < s.node_count(); ++v) CHECK(g.has_node(s.label(v)));
}
