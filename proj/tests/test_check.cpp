#include "doctest.h"

#include "philab/check.hpp"
#include "philab/constructions.hpp"

#include <random>

using namespace philab;

namespace {

TripartiteWeightedGraph two_paths() {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1, 4));
    g.add_vertex(Part::A, "a2", Rational(1, 4));
    g.add_vertex(Part::A, "a3", Rational(1, 2));
    g.add_vertex(Part::B, "b1", Rational(1, 2));
    g.add_vertex(Part::B, "b2", Rational(1, 2));
    g.add_vertex(Part::C, "c1", Rational(1, 2));
    g.add_vertex(Part::C, "c2", Rational(1, 2));
    g.add_edge("a1", "b1");
    g.add_edge("a2", "b1");
    g.add_edge("a3", "b2");
    g.add_edge("b1", "c1");
    g.add_edge("b2", "c1");
    g.add_edge("b2", "c2");
    g.finalize();
    return g;
}

} // namespace

TEST_CASE("second neighborhood weights") {
    TripartiteWeightedGraph g = two_paths();
    CHECK(second_neighborhood_weight(g, "c1") == Rational(1)); // all of A
    CHECK(second_neighborhood_weight(g, "c2") == Rational(1, 2)); // just a3
    CHECK(witness_value(g) == Rational(1));
    CHECK_THROWS_AS(second_neighborhood_weight(g, "a1"), StructuralError);

    const auto sets = second_neighborhoods(g);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].test(0));
    CHECK(sets[0].test(1));
    CHECK(sets[0].test(2));
    CHECK_FALSE(sets[1].test(0));
    CHECK(sets[1].test(2));
}

TEST_CASE("second neighborhood counts each A-vertex once") {
    // a1 is reachable from c1 through both b1 and b2; its weight must not
    // be double counted.
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1));
    g.add_vertex(Part::B, "b1", Rational(1, 2));
    g.add_vertex(Part::B, "b2", Rational(1, 2));
    g.add_vertex(Part::C, "c1", Rational(1));
    g.add_edge("a1", "b1");
    g.add_edge("a1", "b2");
    g.add_edge("b1", "c1");
    g.add_edge("b2", "c1");
    g.finalize();
    CHECK(second_neighborhood_weight(g, "c1") == Rational(1));
}

TEST_CASE("check_constraints: phi") {
    TripartiteWeightedGraph g = two_paths();
    // a1 sees b1 (1/2), b1 sees c1 (1/2), b2 sees c1+c2 (1).
    CHECK(check_constraints(g, Mode::Phi, Rational(1, 2), Rational(1, 2)).satisfied);
    const ConstraintReport bad = check_constraints(g, Mode::Phi, Rational(2, 3), Rational(1, 2));
    CHECK_FALSE(bad.satisfied);
    bool found_margin = false;
    for (const Margin& m : bad.margins)
        if (!m.ok && m.vertex == "a1" && m.actual == Rational(1, 2) && m.required == Rational(2, 3))
            found_margin = true;
    CHECK(found_margin);
}

TEST_CASE("check_constraints: psi adds the reverse sides") {
    TripartiteWeightedGraph g = two_paths();
    // b1 sees a1+a2 = 1/2 in A, c1 sees b1+b2 = 1 in B, c2 sees b2 = 1/2.
    CHECK(check_constraints(g, Mode::Psi, Rational(1, 2), Rational(1, 2)).satisfied);
    // x = 1/2 is fine for A->B but b2 sees only a3 = 1/2; tighten x to 3/5:
    // a-side fails first (a1 sees 1/2 < 3/5) and b-side too.
    const ConstraintReport bad = check_constraints(g, Mode::Psi, Rational(3, 5), Rational(1, 2));
    CHECK_FALSE(bad.satisfied);
}

TEST_CASE("check_constraints rejects A-C edges in all modes") {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1));
    g.add_vertex(Part::B, "b1", Rational(1));
    g.add_vertex(Part::C, "c1", Rational(1));
    g.add_edge("a1", "b1");
    g.add_edge("b1", "c1");
    g.add_edge("a1", "c1");
    g.finalize();
    for (Mode m : {Mode::Phi, Mode::Psi, Mode::Xi})
        CHECK_FALSE(check_constraints(g, m, Rational(1), Rational(1)).satisfied);
}

TEST_CASE("check_constraints validates the query point") {
    TripartiteWeightedGraph g = two_paths();
    CHECK_THROWS_AS(check_constraints(g, Mode::Phi, Rational(0), Rational(1, 2)),
                    std::domain_error);
    CHECK_THROWS_AS(check_constraints(g, Mode::Phi, Rational(1, 2), Rational(3, 2)),
                    std::domain_error);
    CHECK_THROWS_AS(check_constraints(g, Mode::Phi, Rational(-1, 2), Rational(1, 2)),
                    std::domain_error);
}

TEST_CASE("xi exactness finds the common parameters on a cyclic graph") {
    const ConstructionResult cyc = cyclic_shift(3, Rational(1, 3), Rational(1, 3));
    REQUIRE(cyc.trusted());
    const ConstraintReport rep =
        check_constraints(cyc.certificate.graph, Mode::Xi, Rational(1, 3), Rational(1, 3));
    CHECK(rep.satisfied);
    REQUIRE(rep.exact_params.has_value());
    CHECK(rep.exact_params->first == Rational(1, 3));
    CHECK(rep.exact_params->second == Rational(1, 3));
}

TEST_CASE("xi exactness rejects non-uniform sides") {
    // Figure 1 has uniform A<->B sums (13/27) but non-uniform B->C sums.
    const ConstructionResult fig1 = figure1_graph(false);
    REQUIRE(fig1.trusted());
    const ConstraintReport rep =
        check_constraints(fig1.certificate.graph, Mode::Xi, Rational(13, 27), Rational(1, 9));
    CHECK_FALSE(rep.satisfied);
    REQUIRE(rep.exact_params.has_value());
    CHECK(rep.exact_params->first == Rational(13, 27));
    bool noted = false;
    for (const auto& n : rep.notes)
        if (n.find("no common exact y'") != std::string::npos) noted = true;
    CHECK(noted);
}

TEST_CASE("verify_certificate honors the strict flag") {
    TripartiteWeightedGraph g = two_paths();
    WitnessCertificate cert;
    cert.graph = g;
    cert.mode = Mode::Phi;
    cert.x = Rational(1, 2);
    cert.y = Rational(1, 2);
    cert.claimed_bound = Rational(1); // witness value is exactly 1
    cert.strict = false;
    CHECK(verify_certificate(cert).satisfied);

    cert.strict = true;
    const ConstraintReport rep = verify_certificate(cert);
    CHECK_FALSE(rep.satisfied);
    REQUIRE(rep.witness_value.has_value());
    CHECK(*rep.witness_value == Rational(1));
}

TEST_CASE("figure-1 witness value is 13/27") {
    const ConstructionResult fig1 = figure1_graph(false);
    CHECK(witness_value(fig1.certificate.graph) == Rational(13, 27));
    CHECK(verify_certificate(fig1.certificate).satisfied);
}

TEST_CASE("minimal blow-up order is the lcm of weight denominators") {
    CHECK(minimal_blowup_order(two_paths()) == 4);
    const ConstructionResult fig1 = figure1_graph(false);
    CHECK(minimal_blowup_order(fig1.certificate.graph) == 27);
}

TEST_CASE("blow_up validates its order") {
    TripartiteWeightedGraph g = two_paths();
    CHECK_THROWS_AS(blow_up(g, BigInt(0)), std::domain_error);
    CHECK_THROWS_AS(blow_up(g, BigInt(-4)), std::domain_error);
    CHECK_THROWS_AS(blow_up(g, BigInt(2)), std::domain_error); // 1/4 not cleared
}

TEST_CASE("blow_up preserves witness value and constraint verdicts") {
    TripartiteWeightedGraph g = two_paths();
    TripartiteWeightedGraph big = blow_up(g, BigInt(4));
    CHECK_FALSE(big.weighted());
    CHECK(big.part_size(Part::A) == 4);
    CHECK(big.part_size(Part::B) == 4);
    CHECK(big.part_size(Part::C) == 4);
    CHECK(witness_value(big) == witness_value(g));
    for (Mode m : {Mode::Phi, Mode::Psi}) {
        for (auto [x, y] : {std::pair{Rational(1, 2), Rational(1, 2)},
                            std::pair{Rational(2, 3), Rational(1, 2)},
                            std::pair{Rational(1, 4), Rational(1, 4)}}) {
            CHECK(check_constraints(g, m, x, y).satisfied ==
                  check_constraints(big, m, x, y).satisfied);
        }
    }
}

TEST_CASE("randomized blow-up equivalence on small weighted graphs") {
    std::mt19937 rng(424242);
    auto random_weights = [&](int n) {
        // Positive integers scaled to sum 1.
        std::uniform_int_distribution<int> d(1, 6);
        std::vector<long long> raw(n);
        long long total = 0;
        for (auto& v : raw) {
            v = d(rng);
            total += v;
        }
        std::vector<Rational> out;
        for (auto v : raw) out.emplace_back(v, total);
        return out;
    };
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> size(1, 3);
        const int na = size(rng), nb = size(rng), nc = size(rng);
        TripartiteWeightedGraph g;
        auto wa = random_weights(na), wb = random_weights(nb), wc = random_weights(nc);
        for (int i = 0; i < na; ++i) g.add_vertex(Part::A, "a" + std::to_string(i), wa[i]);
        for (int i = 0; i < nb; ++i) g.add_vertex(Part::B, "b" + std::to_string(i), wb[i]);
        for (int i = 0; i < nc; ++i) g.add_vertex(Part::C, "c" + std::to_string(i), wc[i]);
        std::bernoulli_distribution edge(0.6);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
                if (edge(rng)) g.add_edge("a" + std::to_string(i), "b" + std::to_string(j));
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nc; ++j)
                if (edge(rng)) g.add_edge("b" + std::to_string(i), "c" + std::to_string(j));
        g.finalize();
        const BigInt n = minimal_blowup_order(g);
        TripartiteWeightedGraph big = blow_up(g, n);
        CHECK(witness_value(big) == witness_value(g));
        CHECK(check_constraints(big, Mode::Psi, Rational(1, 7), Rational(1, 7)).satisfied ==
              check_constraints(g, Mode::Psi, Rational(1, 7), Rational(1, 7)).satisfied);
    }
}
