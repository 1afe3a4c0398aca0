#pragma once

#include "philab/rational.hpp"
#include "philab/witness.hpp"

#include <string>
#include <vector>

namespace philab {

enum class Direction { Lower, Upper };

/// One certified fact about an extremal function at a point: a lower
/// bound cites a theorem predicate verified true at (x,y); an upper
/// bound cites a validated witness certificate.
struct CertifiedBound {
    Direction direction = Direction::Lower;
    Rational value;
    bool strict = false; // strict lower: f > value; strict upper: f < value
    std::string provenance;
    Mode mode = Mode::Phi;
};

/// Best certified enclosure for f(x,y) at a query point.
struct BoundInterval {
    Mode mode = Mode::Phi;
    Rational x, y;
    CertifiedBound best_lower;
    CertifiedBound best_upper;
};

/// Evaluates every lower-bound theorem predicate at (x,y). In phi mode
/// every predicate is also tried at (y,x) (phi is symmetric); phi-level
/// bounds are returned for psi and xi queries as well, since
/// phi <= psi <= xi pointwise. k-parametrized families are scanned over
/// 1 <= k <= k_max.
std::vector<CertifiedBound> lower_bounds(Mode mode, const Rational& x, const Rational& y,
                                         long long k_max = 64);

/// Invokes every applicable upper-bound construction at (x,y), validates
/// it, and returns the claims. The cyclic family is scanned up to
/// min(effort, 3 * lcm of the denominators); phi mode additionally
/// queries (y,x), materializing the mirrored bound through
/// reduce + symmetrize. Results are memoized per (mode, x, y, effort).
std::vector<CertifiedBound> upper_bounds(Mode mode, const Rational& x, const Rational& y,
                                         long long effort = 64);

/// Max of the lower bounds and min of the upper bounds, cross-checked:
/// a crossing (or strictness at a touching pair) signals an
/// implementation bug and raises ConsistencyError.
BoundInterval best_interval(Mode mode, const Rational& x, const Rational& y,
                            long long effort = 64);

/// A transferable upper-bound fact anchored at (x0, y0): the certified
/// value bounds the queried function at every (x, y) with x <= x0 and
/// y <= y0 coordinatewise, because the certifying graph stays inside
/// the (down-closed) family.
struct UpperAnchor {
    Rational x0;
    Rational y0;
    CertifiedBound bound;
};

/// Anchors derived from the bundled figure certificates, filtered to
/// those whose certificate class bounds the queried function.
std::vector<UpperAnchor> figure_upper_anchors(Mode query);

} // namespace philab
