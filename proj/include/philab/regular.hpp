#pragma once

#include "philab/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace philab {

/// A bipartite graph with weights on both sides, used by the x-regular
/// machinery (no third part involved).
struct BipartiteWeightedGraph {
    std::vector<std::string> ids_a, ids_b;
    std::vector<Rational> w_a, w_b;
    std::vector<std::vector<bool>> adj; // adj[i][j]: a_i ~ b_j

    std::size_t order() const { return ids_a.size(); }
    Rational min_weight() const;
};

/// x-regular: |A| = |B|, all weights strictly positive and each side sums
/// to 1, the 0/1 adjacency matrix is nonsingular, and every neighborhood
/// on both sides weighs exactly x.
bool is_x_regular(const BipartiteWeightedGraph& g, const Rational& x);

/// The 2/5-regular graph of order 4 (weights 1/5, 1/5, 1/5, 2/5 per side).
BipartiteWeightedGraph figure7_regular_graph();

struct RegularSearchResult {
    Rational x;
    std::optional<int> order_found;
    std::optional<BipartiteWeightedGraph> graph;
    int exhausted_up_to = 0;
};

/// Smallest order n <= n_max admitting an x-regular graph, by exhaustive
/// enumeration of nonsingular 0/1 matrices up to row/column permutation
/// (rows enumerated strictly increasing as bitmasks, with incremental rank
/// pruning). Among the solutions at the minimal order, the graph with the
/// largest minimum weight is kept (first in canonical order on ties).
RegularSearchResult min_regular_order(const Rational& x, int n_max);

/// The peace consequences of a successful search: phi(x, y) = x for all
/// y <= 1/order, and psi(x, y) = x for all y <= min-weight of the graph
/// found. Requires result.order_found.
std::vector<std::pair<std::string, Rational>> regular_implies_peace(
    const Rational& x, const RegularSearchResult& result);

/// q <= floor((n+1)^((n+1)/2)) for x = p/q in lowest terms, computed in
/// exact integer arithmetic.
bool hadamard_bound_check(int n, const Rational& x);

} // namespace philab
