#include "doctest.h"

#include "philab/check.hpp"
#include "philab/lp.hpp"

#include <random>

using namespace philab;

namespace {

/// Exact validation of a dichotomy answer against its instance.
void check_dichotomy_answer(const BipartiteInstance& inst, const Dichotomy& d) {
    const Rational t = inst.min_neighborhood();
    CHECK(d.threshold == t);
    if (d.branch == Dichotomy::Branch::Rebalanced) {
        REQUIRE(d.rebalanced.has_value());
        const auto& w = *d.rebalanced;
        REQUIRE(w.size() == inst.side_B.size());
        Rational sum(0);
        bool has_zero = false;
        for (const auto& v : w) {
            CHECK_FALSE(v.is_negative());
            if (v.is_zero()) has_zero = true;
            sum += v;
        }
        CHECK(sum == Rational(1));
        CHECK(has_zero);
        for (std::size_t i = 0; i < inst.side_A.size(); ++i) {
            Rational nb(0);
            for (std::size_t j = 0; j < inst.side_B.size(); ++j)
                if (inst.adjacency[i][j]) nb += w[j];
            CHECK(nb >= t);
        }
    } else {
        REQUIRE(d.dual.has_value());
        const auto& f = *d.dual;
        REQUIRE(f.size() == inst.side_A.size());
        Rational sum(0);
        for (const auto& v : f) {
            CHECK_FALSE(v.is_negative());
            sum += v;
        }
        if (!inst.side_A.empty()) CHECK(sum == Rational(1));
        for (std::size_t j = 0; j < inst.side_B.size(); ++j) {
            Rational na(0);
            for (std::size_t i = 0; i < inst.side_A.size(); ++i)
                if (inst.adjacency[i][j]) na += f[i];
            CHECK(na >= t);
        }
    }
}

} // namespace

TEST_CASE("solve_lp: bounded maximum with exact duals") {
    LinearProgram lp;
    lp.n = 2;
    lp.c = {Rational(3), Rational(2)};
    {
        LpRow& r = lp.add_row(Rel::Le, Rational(4));
        r.a[0] = Rational(1);
        r.a[1] = Rational(1);
    }
    {
        LpRow& r = lp.add_row(Rel::Le, Rational(2));
        r.a[0] = Rational(1);
    }
    const LpResult res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == Rational(10));
    CHECK(res.x[0] == Rational(2));
    CHECK(res.x[1] == Rational(2));
    REQUIRE(res.y.size() == 2);
    CHECK(res.y[0] == Rational(2));
    CHECK(res.y[1] == Rational(1));
    // Strong duality holds exactly.
    CHECK(res.y[0] * Rational(4) + res.y[1] * Rational(2) == res.value);
}

TEST_CASE("solve_lp: equality and >= rows") {
    // maximize x1 subject to x1 + x2 = 1, x1 - x2 >= -1/3  =>  x1 <= 1.
    LinearProgram lp;
    lp.n = 2;
    lp.c = {Rational(1), Rational(0)};
    {
        LpRow& r = lp.add_row(Rel::Eq, Rational(1));
        r.a[0] = Rational(1);
        r.a[1] = Rational(1);
    }
    {
        LpRow& r = lp.add_row(Rel::Ge, Rational(-1, 3));
        r.a[0] = Rational(1);
        r.a[1] = Rational(-1);
    }
    const LpResult res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == Rational(1));
    CHECK(res.x[0] == Rational(1));
    CHECK(res.x[1] == Rational(0));
}

TEST_CASE("solve_lp: minimize via negated objective, fractional optimum") {
    // maximize -(2x + 3y) s.t. x + 3y >= 1, 3x + y >= 1: optimum at the
    // crossing (1/4, 1/4), value -5/4.
    LinearProgram lp;
    lp.n = 2;
    lp.c = {Rational(-2), Rational(-3)};
    {
        LpRow& r = lp.add_row(Rel::Ge, Rational(1));
        r.a[0] = Rational(1);
        r.a[1] = Rational(3);
    }
    {
        LpRow& r = lp.add_row(Rel::Ge, Rational(1));
        r.a[0] = Rational(3);
        r.a[1] = Rational(1);
    }
    const LpResult res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.value == Rational(-5, 4));
    CHECK(res.x[0] == Rational(1, 4));
    CHECK(res.x[1] == Rational(1, 4));
}

TEST_CASE("solve_lp: infeasible and unbounded detection") {
    LinearProgram bad;
    bad.n = 1;
    bad.c = {Rational(1)};
    {
        LpRow& r = bad.add_row(Rel::Ge, Rational(2));
        r.a[0] = Rational(1);
    }
    {
        LpRow& r = bad.add_row(Rel::Le, Rational(1));
        r.a[0] = Rational(1);
    }
    CHECK(solve_lp(bad).status == LpStatus::Infeasible);

    LinearProgram unb;
    unb.n = 1;
    unb.c = {Rational(1)};
    {
        LpRow& r = unb.add_row(Rel::Ge, Rational(0));
        r.a[0] = Rational(1);
    }
    CHECK(solve_lp(unb).status == LpStatus::Unbounded);
}

TEST_CASE("solve_lp stays exact under awkward denominators") {
    // maximize x + y with 7/13 x + 11/17 y <= 1, x <= 13/7: the optimum
    // sits at x = 13/7, y = 0 -> no; compare both vertices exactly.
    LinearProgram lp;
    lp.n = 2;
    lp.c = {Rational(1), Rational(1)};
    {
        LpRow& r = lp.add_row(Rel::Le, Rational(1));
        r.a[0] = Rational(7, 13);
        r.a[1] = Rational(11, 17);
    }
    const LpResult res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    // Vertices: (13/7, 0) value 13/7 and (0, 17/11) value 17/11 < 13/7.
    CHECK(res.value == Rational(13, 7));
}

TEST_CASE("solve_linear_system") {
    auto sol = solve_linear_system({{Rational(2), Rational(1)}, {Rational(1), Rational(3)}},
                                   {Rational(5), Rational(10)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rational(1));
    CHECK((*sol)[1] == Rational(3));

    auto singular = solve_linear_system(
        {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}, {Rational(1), Rational(2)});
    CHECK_FALSE(singular.has_value());
}

TEST_CASE("lpbip dichotomy: star rebalances, matching goes dual") {
    BipartiteInstance star;
    star.side_A = {"u"};
    star.side_B = {"v1", "v2"};
    star.adjacency = {{true, true}};
    star.w = {Rational(1, 2), Rational(1, 2)};
    const Dichotomy ds = lpbip_dichotomy(star);
    CHECK(ds.branch == Dichotomy::Branch::Rebalanced);
    check_dichotomy_answer(star, ds);

    BipartiteInstance matching;
    matching.side_A = {"u1", "u2"};
    matching.side_B = {"v1", "v2"};
    matching.adjacency = {{true, false}, {false, true}};
    matching.w = {Rational(1, 2), Rational(1, 2)};
    const Dichotomy dm = lpbip_dichotomy(matching);
    CHECK(dm.branch == Dichotomy::Branch::Dual);
    check_dichotomy_answer(matching, dm);
}

TEST_CASE("lpbip dichotomy: empty A returns the vacuous dual") {
    BipartiteInstance inst;
    inst.side_B = {"v1"};
    inst.adjacency = {};
    inst.w = {Rational(1)};
    const Dichotomy d = lpbip_dichotomy(inst);
    CHECK(d.branch == Dichotomy::Branch::Dual);
    CHECK(d.threshold == Rational(0));
}

TEST_CASE("lpbip dichotomy: randomized property suite") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> size(1, 5);
    std::uniform_int_distribution<int> wraw(1, 9);
    std::bernoulli_distribution edge(0.5);
    for (int trial = 0; trial < 60; ++trial) {
        BipartiteInstance inst;
        const int na = size(rng), nb = size(rng);
        for (int i = 0; i < na; ++i) inst.side_A.push_back("u" + std::to_string(i));
        for (int j = 0; j < nb; ++j) inst.side_B.push_back("v" + std::to_string(j));
        inst.adjacency.assign(na, std::vector<bool>(nb, false));
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) inst.adjacency[i][j] = edge(rng);
        long long total = 0;
        std::vector<long long> raw(nb);
        for (auto& v : raw) {
            v = wraw(rng);
            total += v;
        }
        for (auto v : raw) inst.w.emplace_back(v, total);
        inst.validate();
        check_dichotomy_answer(inst, lpbip_dichotomy(inst));
    }
}

TEST_CASE("feasible_weights finds weights or proves none exist") {
    TripartiteWeightedGraph topo;
    for (int i = 1; i <= 3; ++i) topo.add_vertex(Part::A, "a" + std::to_string(i));
    for (int i = 1; i <= 3; ++i) topo.add_vertex(Part::B, "b" + std::to_string(i));
    for (int i = 1; i <= 3; ++i) topo.add_vertex(Part::C, "c" + std::to_string(i));
    for (int i = 1; i <= 3; ++i) {
        topo.add_edge("a" + std::to_string(i), "b" + std::to_string(i));
        topo.add_edge("b" + std::to_string(i), "c" + std::to_string(i));
    }
    topo.finalize();

    // Psi on three disjoint paths: witness = max A-weight >= 1/3 always.
    auto ok = feasible_weights(topo, Mode::Psi, Rational(1, 3), Rational(1, 3), Rational(1, 3),
                               /*strict=*/false);
    REQUIRE(ok.has_value());
    CHECK(check_constraints(*ok, Mode::Psi, Rational(1, 3), Rational(1, 3)).satisfied);
    CHECK(witness_value(*ok) <= Rational(1, 3));

    CHECK_FALSE(feasible_weights(topo, Mode::Psi, Rational(1, 3), Rational(1, 3), Rational(1, 3),
                                 /*strict=*/true)
                    .has_value());

    auto strict_ok = feasible_weights(topo, Mode::Psi, Rational(1, 3), Rational(1, 3),
                                      Rational(1, 2), /*strict=*/true);
    REQUIRE(strict_ok.has_value());
    CHECK(witness_value(*strict_ok) < Rational(1, 2));
}

TEST_CASE("with_weights rebuilds a graph on new weights") {
    TripartiteWeightedGraph g;
    g.add_vertex(Part::A, "a1", Rational(1));
    g.add_vertex(Part::B, "b1", Rational(1));
    g.add_vertex(Part::C, "c1", Rational(1));
    g.add_edge("a1", "b1");
    g.add_edge("b1", "c1");
    g.finalize();
    TripartiteWeightedGraph h = with_weights(g, {Rational(1), Rational(1), Rational(1)});
    CHECK(h.same_as(g));
}
