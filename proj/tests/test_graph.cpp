#include "doctest.h"

#include "philab/graph.hpp"

using namespace philab;

namespace {

TripartiteWeightedGraph small_graph() {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1, 2));
    g.add_vertex(Part::A, "a2", Rational(1, 2));
    g.add_vertex(Part::B, "b1", Rational(1));
    g.add_vertex(Part::C, "c1", Rational(2, 3));
    g.add_vertex(Part::C, "c2", Rational(1, 3));
    g.add_edge("a1", "b1");
    g.add_edge("b1", "c1");
    g.add_edge("b1", "c2");
    g.finalize();
    return g;
}

} // namespace

TEST_CASE("build, finalize, and query a small graph") {
    TripartiteWeightedGraph g = small_graph();
    CHECK(g.finalized());
    CHECK(g.weighted());
    CHECK(g.vertex_count() == 5);
    CHECK(g.part_size(Part::A) == 2);
    CHECK(g.part_size(Part::B) == 1);
    CHECK(g.part_size(Part::C) == 2);

    const std::size_t b1 = g.index_of("b1");
    CHECK(g.neighbors_in(b1, Part::A).size() == 1);
    CHECK(g.neighbors_in(b1, Part::C).size() == 2);
    CHECK(g.neighbors_in(b1, Part::B).empty());
    CHECK(g.neighborhood_weight(b1, Part::A) == Rational(1, 2));
    CHECK(g.neighborhood_weight(b1, Part::C) == Rational(1));

    CHECK(g.has_edge("a1", "b1"));
    CHECK(g.has_edge("b1", "a1"));
    CHECK_FALSE(g.has_edge("a2", "b1"));
    CHECK_FALSE(g.has_edge("a1", "nope"));

    CHECK(g.pos_in_part(g.index_of("c2")) == 1);
    CHECK(g.vertex(g.index_of("a2")).weight == Rational(1, 2));
}

TEST_CASE("neighbor lists come out sorted by graph index") {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1, 3));
    g.add_vertex(Part::A, "a2", Rational(1, 3));
    g.add_vertex(Part::A, "a3", Rational(1, 3));
    g.add_vertex(Part::B, "b1", Rational(1));
    g.add_vertex(Part::C, "c1", Rational(1));
    g.add_edge("b1", "c1");
    g.add_edge("a3", "b1");
    g.add_edge("a1", "b1");
    g.add_edge("a2", "b1");
    g.finalize();
    const auto& nb = g.neighbors_in(g.index_of("b1"), Part::A);
    REQUIRE(nb.size() == 3);
    CHECK(nb[0] < nb[1]);
    CHECK(nb[1] < nb[2]);
}

TEST_CASE("negative weight marks the graph unweighted and applies uniform weights") {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1");
    g.add_vertex(Part::A, "a2");
    g.add_vertex(Part::A, "a3");
    g.add_vertex(Part::B, "b1");
    g.add_vertex(Part::C, "c1");
    g.add_edge("a1", "b1");
    g.add_edge("b1", "c1");
    g.finalize();
    CHECK_FALSE(g.weighted());
    CHECK(g.vertex(g.index_of("a1")).weight == Rational(1, 3));
    CHECK(g.vertex(g.index_of("b1")).weight == Rational(1));
    CHECK(g.vertex(g.index_of("c1")).weight == Rational(1));
}

TEST_CASE("A-C edges are legal at the graph level") {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1));
    g.add_vertex(Part::B, "b1", Rational(1));
    g.add_vertex(Part::C, "c1", Rational(1));
    g.add_edge("a1", "c1");
    g.add_edge("a1", "b1");
    g.add_edge("b1", "c1");
    g.finalize();
    CHECK(g.has_edge("a1", "c1"));
    CHECK(g.neighbors_in(g.index_of("a1"), Part::C).size() == 1);
}

TEST_CASE("structural errors") {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1));
    CHECK_THROWS_AS(g.add_vertex(Part::B, "a1", Rational(1)), StructuralError);
    CHECK_THROWS_AS(g.add_vertex(Part::B, "", Rational(1)), StructuralError);
    CHECK_THROWS_AS(g.add_edge("a1", "ghost"), StructuralError);
    CHECK_THROWS_AS(g.add_edge("a1", "a1"), StructuralError);

    g.add_vertex(Part::A, "a2", Rational(0));
    CHECK_THROWS_AS(g.add_edge("a1", "a2"), StructuralError);

    SUBCASE("empty part") {
        g.add_vertex(Part::B, "b1", Rational(1));
        CHECK_THROWS_AS(g.finalize(), StructuralError);
    }
    SUBCASE("weights off by a hair") {
        g.add_vertex(Part::B, "b1", Rational(1));
        g.add_vertex(Part::C, "c1", Rational(999, 1000));
        CHECK_THROWS_AS(g.finalize(), StructuralError);
    }
    SUBCASE("duplicate edge") {
        g.add_vertex(Part::B, "b1", Rational(1));
        g.add_vertex(Part::C, "c1", Rational(1));
        g.add_edge("a1", "b1");
        g.add_edge("b1", "a1");
        CHECK_THROWS_AS(g.finalize(), StructuralError);
    }
    SUBCASE("valid completion") {
        g.add_vertex(Part::B, "b1", Rational(1));
        g.add_vertex(Part::C, "c1", Rational(1));
        g.add_edge("a1", "b1");
        g.add_edge("b1", "c1");
        g.finalize();
        CHECK(g.finalized());
        CHECK_THROWS_AS(g.add_vertex(Part::C, "c9", Rational(1)), StructuralError);
        CHECK_THROWS_AS(g.add_edge("a2", "b1"), StructuralError);
    }
}

TEST_CASE("index_of rejects unknown ids") {
    TripartiteWeightedGraph g = small_graph();
    CHECK_THROWS_AS(g.index_of("zz"), StructuralError);
}

TEST_CASE("adjacency queries before finalize are rejected, not undefined") {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1));
    g.add_vertex(Part::B, "b1", Rational(1));
    g.add_edge("a1", "b1");
    CHECK_THROWS_AS(g.has_edge("a1", "b1"), StructuralError);
}

TEST_CASE("same_as is order-insensitive structural and weight equality") {
    TripartiteWeightedGraph g = small_graph();

    TripartiteWeightedGraph h;
    h.add_vertex(Part::C, "c2", Rational(1, 3));
    h.add_vertex(Part::B, "b1", Rational(1));
    h.add_vertex(Part::A, "a2", Rational(1, 2));
    h.add_vertex(Part::A, "a1", Rational(1, 2));
    h.add_vertex(Part::C, "c1", Rational(2, 3));
    h.add_edge("b1", "c2");
    h.add_edge("c1", "b1");
    h.add_edge("b1", "a1");
    h.finalize();
    CHECK(g.same_as(h));
    CHECK(h.same_as(g));

    TripartiteWeightedGraph k;
    k.add_vertex(Part::A, "a1", Rational(1, 2));
    k.add_vertex(Part::A, "a2", Rational(1, 2));
    k.add_vertex(Part::B, "b1", Rational(1));
    k.add_vertex(Part::C, "c1", Rational(2, 3));
    k.add_vertex(Part::C, "c2", Rational(1, 3));
    k.add_edge("a2", "b1"); // different edge
    k.add_edge("b1", "c1");
    k.add_edge("b1", "c2");
    k.finalize();
    CHECK_FALSE(g.same_as(k));
}

TEST_CASE("IndexSet set/test/unite/for_each") {
    IndexSet s(130);
    s.set(0);
    s.set(64);
    s.set(129);
    CHECK(s.test(0));
    CHECK(s.test(64));
    CHECK(s.test(129));
    CHECK_FALSE(s.test(1));

    IndexSet t(130);
    t.set(1);
    s.unite(t);
    CHECK(s.test(1));

    std::vector<std::size_t> seen;
    s.for_each([&](std::size_t i) { seen.push_back(i); });
    CHECK(seen == std::vector<std::size_t>{0, 1, 64, 129});
}
