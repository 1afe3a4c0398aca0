#pragma once

#include "philab/graph.hpp"
#include "philab/witness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace philab {

/// One checked inequality. For the exact class (xi) the entry records an
/// equality target: ok means actual == required.
struct Margin {
    std::string vertex;
    std::string kind;
    Rational required;
    Rational actual;
    bool ok = true;
};

struct ConstraintReport {
    Mode class_checked = Mode::Phi;
    bool satisfied = false;
    std::vector<Margin> margins;
    /// For mode xi: the common (x', y') when the four exactness bullets
    /// pin them down.
    std::optional<std::pair<Rational, Rational>> exact_params;
    std::optional<Rational> witness_value;
    std::vector<std::string> notes;

    std::string summary() const;
};

/// Does (graph, w) lie in the class named by mode at (x, y)?
/// Requires x, y in (0, 1].
ConstraintReport check_constraints(const TripartiteWeightedGraph& g, Mode mode,
                                   const Rational& x, const Rational& y);

/// w(N^2_A(v)) for a C-vertex v: total A-weight reachable from v by a
/// two-edge path (necessarily through B).
Rational second_neighborhood_weight(const TripartiteWeightedGraph& g, const std::string& v_id);

/// max over v in C of w(N^2_A(v)).
Rational witness_value(const TripartiteWeightedGraph& g);

/// Per-C-vertex second neighborhoods as A-index sets, in C member order.
std::vector<IndexSet> second_neighborhoods(const TripartiteWeightedGraph& g);

/// Full certificate check: class membership plus witness value <=
/// claimed_bound (< when strict).
ConstraintReport verify_certificate(const WitnessCertificate& cert);

/// Replaces every vertex v by round(N*w(v)) clones joined completely along
/// original edges. N must clear all weight denominators; the result is
/// unweighted with parts of size N.
TripartiteWeightedGraph blow_up(const TripartiteWeightedGraph& g, const BigInt& N);

/// Least N for which blow_up is defined: lcm of all weight denominators.
BigInt minimal_blowup_order(const TripartiteWeightedGraph& g);

} // namespace philab
