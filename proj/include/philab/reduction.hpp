#pragma once

#include "philab/lp.hpp"
#include "philab/witness.hpp"

#include <string>
#include <vector>

namespace philab {

/// Repeatedly rebalances B-weights against the A-side constraints and
/// C-weights against the B-side constraints, deleting vertices that can be
/// zeroed out. Every deletion is committed only after the whole certificate
/// re-validates, so the result is always a valid certificate with the same
/// (x, y, claim). Stops when both sub-instances return the dual branch (or
/// their rebalancings no longer re-validate, which can happen outside the
/// plain constrained class).
WitnessCertificate reduce_witness(const WitnessCertificate& cert);

/// The symmetry transform: from a valid phi-certificate at (x, y) builds a
/// valid phi-certificate at (y, x) with the same claimed bound, by reading
/// the graph as (C, B, A) under new weights f, g, h taken from the dual
/// branches over (B, A), (C, B), and the complement graph H between A and
/// C (u ~ v iff u is not in N^2_A(v)). Reduces internally until all three
/// duals exist. Throws InapplicableError unless cert.mode is phi.
WitnessCertificate symmetrize_witness(const WitnessCertificate& cert);

/// Domination deletion: given X inside A whose C-second-neighborhoods cover
/// C and with |X| < 1/claim, one A-vertex can always be removed after
/// rebalancing A-weights, keeping (x, y, claim) valid. Found via the
/// rebalanced branch over the complement instance H. Throws
/// InapplicableError when the preconditions fail.
WitnessCertificate nodom_reduce(const WitnessCertificate& cert, const std::vector<std::string>& X);

/// The lpbip sub-instance of a certificate: weights on `weighted`,
/// neighborhood sums constrained on `constrained`.
BipartiteInstance certificate_instance(const TripartiteWeightedGraph& g, Part constrained,
                                       Part weighted);

/// The complement instance H: weights on A, and each C-vertex v constrained
/// through the non-members of N^2_A(v).
BipartiteInstance complement_instance(const TripartiteWeightedGraph& g);

} // namespace philab
