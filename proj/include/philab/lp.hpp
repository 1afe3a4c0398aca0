#pragma once

#include "philab/check.hpp"
#include "philab/errors.hpp"
#include "philab/graph.hpp"
#include "philab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace philab {

// ---------------------------------------------------------------------------
// Exact-rational linear programming.
//
// All variables are nonnegative. Rows may be <=, ==, or >=. Solved by
// two-phase primal simplex with Bland's rule (deterministic, cycle-free).
// Dual values are extracted from the final basis and then re-verified by
// direct arithmetic; a failed re-verification throws ConsistencyError.
// ---------------------------------------------------------------------------

enum class Rel { Le, Eq, Ge };

struct LpRow {
    std::vector<Rational> a;
    Rel rel = Rel::Le;
    Rational b;
};

struct LinearProgram {
    std::size_t n = 0;           // variables x_0..x_{n-1}, all >= 0
    std::vector<Rational> c;     // maximize c^T x (empty = feasibility)
    std::vector<LpRow> rows;

    LpRow& add_row(Rel rel, const Rational& b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;     // primal optimum (size n)
    Rational value;              // objective at x
    /// One multiplier per row: y_i >= 0 for <=, y_i <= 0 for >=, free
    /// for ==; A^T y >= c and b^T y = value.
    std::vector<Rational> y;
};

LpResult solve_lp(const LinearProgram& lp);

/// Unique solution of a square rational system, or nullopt when the matrix
/// is singular.
std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> m,
                                                         std::vector<Rational> rhs);

// ---------------------------------------------------------------------------
// The bipartite rebalancing dichotomy.
// ---------------------------------------------------------------------------

/// A bipartite graph with weights on side B summing to 1. The quantity
/// w(A->B) is the minimum over u in A of w(N(u)), taken as 0 when A is
/// empty.
struct BipartiteInstance {
    std::vector<std::string> side_A;
    std::vector<std::string> side_B;
    std::vector<std::vector<bool>> adjacency;  // adjacency[i][j]: A_i ~ B_j
    std::vector<Rational> w;                   // on side_B

    void validate() const;  // dimensions and weight sanity
    Rational min_neighborhood() const;         // w(A->B)
};

/// Exactly one of:
///   rebalanced: w' on B with w'(B)=1, w'(A->B) >= w(A->B), some w'(v)=0;
///   dual:       f on A with f(A)=1, f(B->A) >= w(A->B).
/// When A is empty the dual branch is returned with f empty (the f(A)=1
/// normalization is vacuous at threshold 0).
struct Dichotomy {
    enum class Branch { Rebalanced, Dual };
    Branch branch = Branch::Dual;
    std::optional<std::vector<Rational>> rebalanced;  // on side_B
    std::optional<std::vector<Rational>> dual;        // on side_A
    Rational threshold;                               // w(A->B) of the input
    std::string note;
};

Dichotomy lpbip_dichotomy(const BipartiteInstance& inst);

// ---------------------------------------------------------------------------
// Weight feasibility on a fixed adjacency.
// ---------------------------------------------------------------------------

/// Finds per-vertex weights making `topology` a member of the class named
/// by mode at (x, y) with witness value <= bound (< when strict), or
/// nullopt. Existing weights on the topology are ignored. Strictness is
/// decided by checking the nonstrict optimum, then re-solving with margin
/// 1/D^4 (D = common denominator of x, y, bound), then maximizing the gap.
std::optional<TripartiteWeightedGraph> feasible_weights(const TripartiteWeightedGraph& topology,
                                                        Mode mode, const Rational& x,
                                                        const Rational& y, const Rational& bound,
                                                        bool strict);

/// Rebuilds `g` with the given weights (indexed like g's vertices).
TripartiteWeightedGraph with_weights(const TripartiteWeightedGraph& g,
                                     const std::vector<Rational>& weights);

} // namespace philab
