#include "doctest.h"

#include "philab/regular.hpp"

using namespace philab;

TEST_CASE("figure 7 graph is 2/5-regular of order 4") {
    const BipartiteWeightedGraph g = figure7_regular_graph();
    REQUIRE(g.order() == 4);
    CHECK(g.min_weight() == Rational(1, 5));
    CHECK(is_x_regular(g, Rational(2, 5)));
    CHECK_FALSE(is_x_regular(g, Rational(1, 5)));
}

TEST_CASE("is_x_regular rejects malformed graphs") {
    BipartiteWeightedGraph g = figure7_regular_graph();

    SUBCASE("zero weight") {
        g.w_a[0] = Rational(0);
        g.w_a[1] = Rational(2, 5);
        CHECK_FALSE(is_x_regular(g, Rational(2, 5)));
    }
    SUBCASE("weights not summing to 1") {
        g.w_b[3] = Rational(1, 5);
        CHECK_FALSE(is_x_regular(g, Rational(2, 5)));
    }
    SUBCASE("singular adjacency") {
        // Make rows a1 and a2 identical: singular matrix.
        g.adj[1] = g.adj[0];
        CHECK_FALSE(is_x_regular(g, Rational(2, 5)));
    }
    SUBCASE("uneven neighborhood") {
        g.adj[0][2] = true;
        CHECK_FALSE(is_x_regular(g, Rational(2, 5)));
    }
}

TEST_CASE("min_regular_order(2/5, 5) = 4 with an exhaustive refutation below") {
    const RegularSearchResult res = min_regular_order(Rational(2, 5), 5);
    REQUIRE(res.order_found.has_value());
    CHECK(*res.order_found == 4);
    CHECK(res.exhausted_up_to >= 3); // orders 1..3 exhaustively refuted
    REQUIRE(res.graph.has_value());
    CHECK(res.graph->order() == 4);
    CHECK(is_x_regular(*res.graph, Rational(2, 5)));
    // Figure 7 attains minimum weight 1/5; the kept graph cannot do worse.
    CHECK(res.graph->min_weight() >= Rational(1, 5));
}

TEST_CASE("min_regular_order(1/3, 4) = 3") {
    const RegularSearchResult res = min_regular_order(Rational(1, 3), 4);
    REQUIRE(res.order_found.has_value());
    CHECK(*res.order_found == 3);
    REQUIRE(res.graph.has_value());
    CHECK(is_x_regular(*res.graph, Rational(1, 3)));
}

TEST_CASE("1/2-regularity needs only order 2") {
    const RegularSearchResult res = min_regular_order(Rational(1, 2), 3);
    REQUIRE(res.order_found.has_value());
    CHECK(*res.order_found == 2);
    REQUIRE(res.graph.has_value());
    CHECK(res.graph->min_weight() == Rational(1, 2));
}

TEST_CASE("regular_implies_peace reports the two consequences") {
    const RegularSearchResult res = min_regular_order(Rational(2, 5), 5);
    REQUIRE(res.order_found.has_value());
    const auto peace = regular_implies_peace(Rational(2, 5), res);
    REQUIRE(peace.size() == 2);
    // phi(2/5, y) = 2/5 for y <= 1/order; psi likewise up to the minimum
    // weight of the graph found.
    CHECK(peace[0].second == Rational(1, 4));
    CHECK(peace[1].second == res.graph->min_weight());
    for (const auto& [desc, val] : peace) CHECK_FALSE(desc.empty());
}

TEST_CASE("hadamard bound") {
    // Order 4 allows denominators up to floor(5^(5/2)) = 55.
    CHECK(hadamard_bound_check(4, Rational(2, 5)));
    CHECK(hadamard_bound_check(4, Rational(27, 55)));
    CHECK_FALSE(hadamard_bound_check(4, Rational(28, 56 + 1)));
    CHECK_FALSE(hadamard_bound_check(1, Rational(1, 3)));
    CHECK(hadamard_bound_check(1, Rational(1, 2)));
    CHECK(hadamard_bound_check(2, Rational(1, 3)));
}

TEST_CASE("hadamard bound holds on searched graphs") {
    for (int num = 1; num <= 4; ++num) {
        const Rational x(num, 5);
        CAPTURE(num);
        const RegularSearchResult res = min_regular_order(x, 5);
        if (!res.order_found) continue;
        CHECK(hadamard_bound_check(*res.order_found, x));
    }
}
