#include "philab/lp.hpp"

#include <algorithm>

namespace philab {

LpRow& LinearProgram::add_row(Rel rel, const Rational& b) {
    rows.push_back(LpRow{std::vector<Rational>(n, Rational(0)), rel, b});
    return rows.back();
}

namespace {

const Rational kZero(0);
const Rational kOne(1);

/// Dense simplex tableau over the columns
///   [ structural x | slack/surplus | artificial | rhs ].
/// Artificial columns double as unit columns for dual read-off, so they are
/// kept in the tableau (barred from entering) for the whole solve.
class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) : lp_(lp), m_(lp.rows.size()), n_(lp.n) {
        build();
    }

    LpStatus run() {
        if (has_artificial_) {
            phase_one_ = true;
            iterate();
            // Feasible iff all artificials were driven to zero.
            for (std::size_t r = 0; r < m_; ++r)
                if (is_art_[basis_[r]] && rhs(r) != kZero) return LpStatus::Infeasible;
            phase_one_ = false;
        }
        return iterate();
    }

    std::vector<Rational> primal() const {
        std::vector<Rational> x(n_, kZero);
        for (std::size_t r = 0; r < m_; ++r)
            if (basis_[r] < n_) x[basis_[r]] = rhs(r);
        return x;
    }

    /// Multiplier for original row i, in the sign convention of the
    /// normalized (b >= 0) tableau; caller undoes row negations.
    Rational dual_of_row(std::size_t i) const {
        // The unit column e_i has reduced cost -y_i under cost 0.
        std::size_t col = unit_col_[i];
        Rational z = kZero;
        for (std::size_t r = 0; r < m_; ++r) {
            const Rational& cb = cost(basis_[r]);
            if (!cb.is_zero()) z += cb * tab_[r][col];
        }
        return z;
    }

    bool row_negated(std::size_t i) const { return negated_[i]; }

private:
    const LinearProgram& lp_;
    std::size_t m_, n_, cols_ = 0;
    std::vector<std::vector<Rational>> tab_;   // m x (cols_ + 1)
    std::vector<std::size_t> basis_;
    std::vector<char> is_art_, in_basis_, negated_;
    std::vector<std::size_t> unit_col_;        // per row: a column equal to e_row
    std::vector<Rational> obj_;                // phase-2 cost per column
    bool has_artificial_ = false, phase_one_ = false;

    Rational& rhs(std::size_t r) { return tab_[r][cols_]; }
    const Rational& rhs(std::size_t r) const { return tab_[r][cols_]; }

    Rational cost(std::size_t col) const {
        if (phase_one_) return is_art_[col] ? Rational(-1) : kZero;
        return obj_[col];
    }

    void build() {
        negated_.assign(m_, 0);
        unit_col_.assign(m_, 0);
        std::vector<Rel> rel(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            rel[i] = lp_.rows[i].rel;
            if (lp_.rows[i].b.is_negative()) {
                negated_[i] = 1;
                if (rel[i] == Rel::Le) rel[i] = Rel::Ge;
                else if (rel[i] == Rel::Ge) rel[i] = Rel::Le;
            }
        }
        std::size_t extra = 0;
        std::vector<std::size_t> slack_col(m_, 0), art_col(m_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            if (rel[i] != Rel::Eq) slack_col[i] = n_ + extra++;
        for (std::size_t i = 0; i < m_; ++i)
            if (rel[i] != Rel::Le) {
                art_col[i] = n_ + extra++;
                has_artificial_ = true;
            }
        cols_ = n_ + extra;
        is_art_.assign(cols_, 0);
        tab_.assign(m_, std::vector<Rational>(cols_ + 1, kZero));
        basis_.assign(m_, 0);
        in_basis_.assign(cols_, 0);
        obj_.assign(cols_, kZero);
        for (std::size_t j = 0; j < lp_.c.size() && j < n_; ++j) obj_[j] = lp_.c[j];

        for (std::size_t i = 0; i < m_; ++i) {
            const LpRow& row = lp_.rows[i];
            if (row.a.size() != n_) throw std::invalid_argument("LP row width mismatch");
            for (std::size_t j = 0; j < n_; ++j)
                tab_[i][j] = negated_[i] ? -row.a[j] : row.a[j];
            rhs(i) = negated_[i] ? -row.b : row.b;
            if (rel[i] != Rel::Eq)
                tab_[i][slack_col[i]] = (rel[i] == Rel::Le) ? kOne : Rational(-1);
            if (rel[i] != Rel::Le) {
                tab_[i][art_col[i]] = kOne;
                is_art_[art_col[i]] = 1;
                basis_[i] = art_col[i];
            } else {
                basis_[i] = slack_col[i];
            }
            in_basis_[basis_[i]] = 1;
            unit_col_[i] = (rel[i] == Rel::Le) ? slack_col[i] : art_col[i];
        }
    }

    Rational reduced_cost(std::size_t j) const {
        Rational d = cost(j);
        for (std::size_t r = 0; r < m_; ++r) {
            const Rational& cb = cost(basis_[r]);
            if (!cb.is_zero() && !tab_[r][j].is_zero()) d -= cb * tab_[r][j];
        }
        return d;
    }

    void pivot(std::size_t r, std::size_t j) {
        in_basis_[basis_[r]] = 0;
        Rational p = tab_[r][j];
        for (auto& v : tab_[r])
            if (!v.is_zero()) v /= p;
        tab_[r][j] = kOne;  // guard against p/p round trips (exact anyway)
        for (std::size_t r2 = 0; r2 < m_; ++r2) {
            if (r2 == r || tab_[r2][j].is_zero()) continue;
            Rational f = tab_[r2][j];
            for (std::size_t c = 0; c <= cols_; ++c)
                if (!tab_[r][c].is_zero()) tab_[r2][c] -= f * tab_[r][c];
            tab_[r2][j] = kZero;
        }
        basis_[r] = j;
        in_basis_[j] = 1;
    }

    LpStatus iterate() {
        for (;;) {
            // Bland: entering = lowest-index improving non-basic column.
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (in_basis_[j] || is_art_[j]) continue;  // artificials never enter
                if (reduced_cost(j) > kZero) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return LpStatus::Optimal;

            // In phase 2, kick out any basic artificial whose row meets the
            // entering column; such rows sit at rhs 0, so the pivot is
            // degenerate and keeps artificials from regrowing.
            if (!phase_one_) {
                std::size_t kick = m_;
                for (std::size_t r = 0; r < m_; ++r)
                    if (is_art_[basis_[r]] && !tab_[r][enter].is_zero() && rhs(r).is_zero()) {
                        kick = r;
                        break;
                    }
                if (kick != m_) {
                    pivot(kick, enter);
                    continue;
                }
            }

            std::size_t leave = m_;
            Rational best;
            for (std::size_t r = 0; r < m_; ++r) {
                if (!(tab_[r][enter] > kZero)) continue;
                Rational ratio = rhs(r) / tab_[r][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == m_) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

void verify_lp_result(const LinearProgram& lp, const LpResult& res) {
    if (res.status != LpStatus::Optimal) return;
    // Primal feasibility.
    Rational obj = kZero;
    for (std::size_t j = 0; j < lp.n; ++j) {
        if (res.x[j].is_negative()) throw ConsistencyError("LP primal has negative coordinate");
        if (j < lp.c.size()) obj += lp.c[j] * res.x[j];
    }
    if (obj != res.value) throw ConsistencyError("LP objective mismatch");
    for (const LpRow& row : lp.rows) {
        Rational lhs = kZero;
        for (std::size_t j = 0; j < lp.n; ++j)
            if (!row.a[j].is_zero()) lhs += row.a[j] * res.x[j];
        bool ok = (row.rel == Rel::Le)   ? lhs <= row.b
                  : (row.rel == Rel::Ge) ? lhs >= row.b
                                         : lhs == row.b;
        if (!ok) throw ConsistencyError("LP primal violates a row");
    }
    // Dual feasibility: sign conditions, A^T y >= c, b^T y = value.
    Rational dual_obj = kZero;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const Rational& yi = res.y[i];
        if (lp.rows[i].rel == Rel::Le && yi.is_negative())
            throw ConsistencyError("LP dual sign violation on <= row");
        if (lp.rows[i].rel == Rel::Ge && yi > kZero)
            throw ConsistencyError("LP dual sign violation on >= row");
        dual_obj += yi * lp.rows[i].b;
    }
    for (std::size_t j = 0; j < lp.n; ++j) {
        Rational col = kZero;
        for (std::size_t i = 0; i < lp.rows.size(); ++i)
            if (!lp.rows[i].a[j].is_zero()) col += res.y[i] * lp.rows[i].a[j];
        Rational cj = j < lp.c.size() ? lp.c[j] : kZero;
        if (col < cj) throw ConsistencyError("LP dual infeasible at a column");
    }
    if (dual_obj != res.value) throw ConsistencyError("LP strong duality mismatch");
}

} // namespace

LpResult solve_lp(const LinearProgram& lp) {
    for (const LpRow& row : lp.rows)
        if (row.a.size() != lp.n) throw std::invalid_argument("LP row width mismatch");
    Simplex s(lp);
    LpResult res;
    res.status = s.run();
    if (res.status != LpStatus::Optimal) return res;
    res.x = s.primal();
    res.value = kZero;
    for (std::size_t j = 0; j < lp.n && j < lp.c.size(); ++j)
        if (!lp.c[j].is_zero()) res.value += lp.c[j] * res.x[j];
    res.y.resize(lp.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        Rational yi = s.dual_of_row(i);
        res.y[i] = s.row_negated(i) ? -yi : yi;
    }
    verify_lp_result(lp, res);
    return res;
}

std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> m,
                                                         std::vector<Rational> rhs) {
    std::size_t n = m.size();
    if (rhs.size() != n) throw std::invalid_argument("linear system shape mismatch");
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("linear system shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational p = m[col][col];
        for (auto& v : m[col]) v /= p;
        rhs[col] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (std::size_t c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

// ---------------------------------------------------------------------------
// lpbip
// ---------------------------------------------------------------------------

void BipartiteInstance::validate() const {
    if (adjacency.size() != side_A.size())
        throw std::invalid_argument("bipartite instance: adjacency rows != |A|");
    for (const auto& row : adjacency)
        if (row.size() != side_B.size())
            throw std::invalid_argument("bipartite instance: adjacency cols != |B|");
    if (w.size() != side_B.size())
        throw std::invalid_argument("bipartite instance: weight count != |B|");
    for (const Rational& v : w)
        if (v.is_negative()) throw std::invalid_argument("bipartite instance: negative weight");
}

Rational BipartiteInstance::min_neighborhood() const {
    Rational best;
    bool first = true;
    for (std::size_t i = 0; i < side_A.size(); ++i) {
        Rational s = kZero;
        for (std::size_t j = 0; j < side_B.size(); ++j)
            if (adjacency[i][j]) s += w[j];
        if (first || s < best) {
            best = s;
            first = false;
        }
    }
    return first ? kZero : best;
}

namespace {

void verify_dichotomy(const BipartiteInstance& inst, const Dichotomy& d) {
    const Rational& x = d.threshold;
    if (d.branch == Dichotomy::Branch::Rebalanced) {
        const auto& wp = *d.rebalanced;
        if (wp.size() != inst.side_B.size()) throw ConsistencyError("lpbip: w' size mismatch");
        Rational total = kZero;
        bool has_zero = false;
        for (const Rational& v : wp) {
            if (v.is_negative()) throw ConsistencyError("lpbip: w' negative");
            if (v.is_zero()) has_zero = true;
            total += v;
        }
        if (total != kOne) throw ConsistencyError("lpbip: w'(B) != 1");
        if (!has_zero) throw ConsistencyError("lpbip: w' has no zero entry");
        for (std::size_t i = 0; i < inst.side_A.size(); ++i) {
            Rational s = kZero;
            for (std::size_t j = 0; j < wp.size(); ++j)
                if (inst.adjacency[i][j]) s += wp[j];
            if (s < x) throw ConsistencyError("lpbip: w'(A->B) below threshold");
        }
    } else {
        const auto& f = *d.dual;
        if (f.size() != inst.side_A.size()) throw ConsistencyError("lpbip: f size mismatch");
        Rational total = kZero;
        for (const Rational& v : f) {
            if (v.is_negative()) throw ConsistencyError("lpbip: f negative");
            total += v;
        }
        if (!inst.side_A.empty() && total != kOne) throw ConsistencyError("lpbip: f(A) != 1");
        for (std::size_t j = 0; j < inst.side_B.size(); ++j) {
            Rational s = kZero;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (inst.adjacency[i][j]) s += f[i];
            if (s < x) throw ConsistencyError("lpbip: f(B->A) below threshold");
        }
    }
}

} // namespace

Dichotomy lpbip_dichotomy(const BipartiteInstance& inst) {
    inst.validate();
    Dichotomy d;
    d.threshold = inst.min_neighborhood();

    if (inst.side_A.empty()) {
        d.branch = Dichotomy::Branch::Dual;
        d.dual = std::vector<Rational>{};
        d.note = "A empty: dual branch with threshold 0 by convention";
        verify_dichotomy(inst, d);
        return d;
    }
    if (d.threshold.is_zero()) {
        // Some u in A already sees zero weight; its indicator is a valid dual.
        std::vector<Rational> f(inst.side_A.size(), kZero);
        for (std::size_t i = 0; i < inst.side_A.size(); ++i) {
            Rational s = kZero;
            for (std::size_t j = 0; j < inst.side_B.size(); ++j)
                if (inst.adjacency[i][j]) s += inst.w[j];
            if (s.is_zero()) {
                f[i] = kOne;
                break;
            }
        }
        d.branch = Dichotomy::Branch::Dual;
        d.dual = std::move(f);
        d.note = "threshold 0: indicator dual";
        verify_dichotomy(inst, d);
        return d;
    }

    // minimize 1^T q subject to M q >= 1, q >= 0; as a max problem.
    LinearProgram lp;
    lp.n = inst.side_B.size();
    lp.c.assign(lp.n, Rational(-1));
    for (std::size_t i = 0; i < inst.side_A.size(); ++i) {
        LpRow& row = lp.add_row(Rel::Ge, kOne);
        for (std::size_t j = 0; j < lp.n; ++j)
            if (inst.adjacency[i][j]) row.a[j] = kOne;
    }
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal)
        throw ConsistencyError("lpbip: covering LP not optimal despite threshold > 0");
    Rational total_q = -res.value;  // 1^T q = 1/y
    if (!(total_q > kZero)) throw ConsistencyError("lpbip: covering LP total is zero");
    Rational yscale = kOne / total_q;

    bool has_zero = false;
    for (const Rational& q : res.x)
        if (q.is_zero()) has_zero = true;

    if (has_zero) {
        std::vector<Rational> wp(lp.n);
        for (std::size_t j = 0; j < lp.n; ++j) wp[j] = res.x[j] * yscale;
        d.branch = Dichotomy::Branch::Rebalanced;
        d.rebalanced = std::move(wp);
    } else {
        // Duals of the >= rows are <= 0; p = -y solves p^T M <= 1, p^T 1 = 1/y.
        std::vector<Rational> f(inst.side_A.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = -res.y[i] * yscale;
        d.branch = Dichotomy::Branch::Dual;
        d.dual = std::move(f);
    }
    verify_dichotomy(inst, d);
    return d;
}

// ---------------------------------------------------------------------------
// feasible_weights
// ---------------------------------------------------------------------------

TripartiteWeightedGraph with_weights(const TripartiteWeightedGraph& g,
                                     const std::vector<Rational>& weights) {
    if (weights.size() != g.vertex_count())
        throw std::invalid_argument("with_weights: weight count mismatch");
    TripartiteWeightedGraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        out.add_vertex(g.vertex(i).part, g.vertex(i).id, weights[i]);
    for (const auto& e : g.edges()) out.add_edge(g.vertex(e.first).id, g.vertex(e.second).id);
    out.finalize();
    return out;
}

namespace {

/// Builds the membership LP: variables are per-vertex weights (plus x', y'
/// in exact mode); rows are part sums, mode constraints, and the witness
/// cap. The cap right-hand side is bound - margin.
LinearProgram membership_lp(const TripartiteWeightedGraph& g, Mode mode, const Rational& x,
                            const Rational& y, const Rational& bound, const Rational& margin,
                            const std::vector<IndexSet>& n2) {
    std::size_t nv = g.vertex_count();
    LinearProgram lp;
    lp.n = nv + (mode == Mode::Xi ? 2 : 0);
    std::size_t xp = nv, yp = nv + 1;  // exact-mode unknowns

    for (Part p : {Part::A, Part::B, Part::C}) {
        LpRow& row = lp.add_row(Rel::Eq, kOne);
        for (std::size_t i : g.part_members(p)) row.a[i] = kOne;
    }
    auto side_rows = [&](Part from, Part to, const Rational& thresh, bool exact,
                         std::size_t param) {
        for (std::size_t i : g.part_members(from)) {
            LpRow& row = lp.add_row(exact ? Rel::Eq : Rel::Ge, exact ? kZero : thresh);
            for (std::size_t j : g.neighbors_in(i, to)) row.a[j] = kOne;
            if (exact) row.a[param] = Rational(-1);
        }
    };
    switch (mode) {
    case Mode::Phi:
        side_rows(Part::A, Part::B, x, false, 0);
        side_rows(Part::B, Part::C, y, false, 0);
        break;
    case Mode::Psi:
        side_rows(Part::A, Part::B, x, false, 0);
        side_rows(Part::B, Part::A, x, false, 0);
        side_rows(Part::B, Part::C, y, false, 0);
        side_rows(Part::C, Part::B, y, false, 0);
        break;
    case Mode::Xi:
        side_rows(Part::A, Part::B, kZero, true, xp);
        side_rows(Part::B, Part::A, kZero, true, xp);
        side_rows(Part::B, Part::C, kZero, true, yp);
        side_rows(Part::C, Part::B, kZero, true, yp);
        lp.add_row(Rel::Ge, x).a[xp] = kOne;
        lp.add_row(Rel::Ge, y).a[yp] = kOne;
        break;
    }
    const auto& as = g.part_members(Part::A);
    for (const IndexSet& s : n2) {
        LpRow& row = lp.add_row(Rel::Le, bound - margin);
        s.for_each([&](std::size_t pos) { row.a[as[pos]] = kOne; });
    }
    return lp;
}

std::optional<TripartiteWeightedGraph> try_membership(const TripartiteWeightedGraph& g, Mode mode,
                                                      const Rational& x, const Rational& y,
                                                      const Rational& bound,
                                                      const Rational& margin,
                                                      const std::vector<IndexSet>& n2,
                                                      bool maximize_gap) {
    LinearProgram lp = membership_lp(g, mode, x, y, bound, margin, n2);
    std::size_t gap = 0;
    if (maximize_gap) {
        gap = lp.n++;
        for (LpRow& row : lp.rows) row.a.resize(lp.n, kZero);
        for (std::size_t r = lp.rows.size() - n2.size(); r < lp.rows.size(); ++r)
            lp.rows[r].a[gap] = kOne;
        // Keep the gap variable bounded so the LP cannot be unbounded.
        lp.add_row(Rel::Le, kOne).a[gap] = kOne;
        lp.c.assign(lp.n, kZero);
        lp.c[gap] = kOne;
    }
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) return std::nullopt;
    if (maximize_gap && !(res.value > kZero)) return std::nullopt;
    std::vector<Rational> w(res.x.begin(), res.x.begin() + g.vertex_count());
    return with_weights(g, w);
}

} // namespace

std::optional<TripartiteWeightedGraph> feasible_weights(const TripartiteWeightedGraph& topology,
                                                        Mode mode, const Rational& x,
                                                        const Rational& y, const Rational& bound,
                                                        bool strict) {
    for (const auto& e : topology.edges()) {
        Part pu = topology.vertex(e.first).part;
        Part pv = topology.vertex(e.second).part;
        if ((pu == Part::A && pv == Part::C) || (pu == Part::C && pv == Part::A))
            return std::nullopt;  // A-C edges never belong to these classes
    }
    std::vector<IndexSet> n2 = second_neighborhoods(topology);

    auto accept = [&](const TripartiteWeightedGraph& g) {
        ConstraintReport rep = check_constraints(g, mode, x, y);
        Rational value = witness_value(g);
        bool ok = rep.satisfied && (strict ? value < bound : value <= bound);
        if (!ok) throw ConsistencyError("feasible_weights: solution fails re-validation");
    };

    auto sol = try_membership(topology, mode, x, y, bound, kZero, n2, false);
    if (!sol) return std::nullopt;
    if (!strict || witness_value(*sol) < bound) {
        accept(*sol);
        return sol;
    }
    // Strict wanted but the plain optimum sits on the boundary: retry with a
    // fixed margin, then with an exact maximum-gap solve.
    BigInt d = lcm(lcm(x.den(), y.den()), bound.den());
    Rational eps = kOne / Rational(d * d * d * d);
    sol = try_membership(topology, mode, x, y, bound, eps, n2, false);
    if (!sol) sol = try_membership(topology, mode, x, y, bound, kZero, n2, true);
    if (!sol) return std::nullopt;
    accept(*sol);
    return sol;
}

} // namespace philab
