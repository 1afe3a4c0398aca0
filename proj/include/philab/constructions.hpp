#pragma once

#include "philab/check.hpp"
#include "philab/errors.hpp"
#include "philab/triangular.hpp"
#include "philab/witness.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace philab {

/// Construction-internal parameters, each recorded with the interval it
/// was chosen from (when the proof states one).
struct FreeParams {
    std::map<std::string, Rational> values;
    std::map<std::string, std::pair<Rational, Rational>> intervals;

    void set(const std::string& name, const Rational& v) { values[name] = v; }
    void set(const std::string& name, const Rational& v, const Rational& lo, const Rational& hi) {
        values[name] = v;
        intervals[name] = {lo, hi};
    }
};

struct ConstructionResult {
    WitnessCertificate certificate;
    FreeParams params;
    ConstraintReport validation;
    std::vector<std::string> formula_discrepancies;

    bool trusted() const { return validation.satisfied; }
};

// --- base constructions ----------------------------------------------------

/// Three k-sets with cyclic-interval adjacency; exact at
/// (ceil(kx)/k, ceil(ky)/k), witness value (ceil(kx)+ceil(ky)-1)/k.
ConstructionResult cyclic_shift(long long k, const Rational& x, const Rational& y);

/// The 21-vertex graph showing psi(13/27, 1/9) <= 13/27; with exactify,
/// its 81-vertex blow-up with the B-C join thinned to a 3-regular
/// circulant, which is (13/27, 1/9)-exact.
ConstructionResult figure1_graph(bool exactify);

/// The 18-vertex graph showing phi(3/10, 4/11) <= 4/9.
ConstructionResult figure2_graph();

/// Appends a path a-b-c and rescales: from a witness at
/// (x/(1-x), y/(1-y)) with bound z/(1-z), a phi-witness at (x, y) with
/// claim z.
ConstructionResult add_path_extension(const WitnessCertificate& inner, const Rational& x,
                                      const Rational& y, const Rational& z);

/// phi(x,y) < 1/(k+1) whenever x/(1-kx) + y/(1-ky) <= 1: k-fold path
/// extension over a cyclic base.
ConstructionResult phi12curve_witness(long long k, const Rational& x, const Rational& y);

/// psi(x,y) < 1/(k+1) whenever x+(k+1)y <= 1 and (k+1)x+y <= 1: the
/// cyclic-plus-pendant construction with the extra vertex a*.
ConstructionResult psi12curve_witness(long long k, const Rational& x, const Rational& y);

// --- level-specific constructions ------------------------------------------

enum class ExtraVariant { Forward, Reversed };

/// Figure-1 topology with re-derived weights: psi(x,y) <= 13/27 on
/// x <= 13/27, y <= 1/7, 3x+5y <= 2 (forward); the reversed variant reads
/// the graph upside down and additionally needs y < 1/8.
ConstructionResult psi12extracurve_witness(const Rational& x, const Rational& y,
                                           ExtraVariant variant);

/// phi(x,y) < 1/2 on x <= 1/3, y < (1-x)^2/(2-4x+6x^2): two cyclic blocks
/// joined through C2, plus a path a-b-c.
ConstructionResult phi12bettercurve_witness(const Rational& x, const Rational& y);

enum class Psi23Variant { First, Second };

/// psi(x,y) < 2/3 from seven three-vertex paths with cross edges; variant
/// second reads the graph as (C, B, A).
ConstructionResult psi23extra_witness(const Rational& x, const Rational& y, Psi23Variant variant);

/// phi(x,y) < 2/3 on x/(1-x) + y/(1-2y) <= 2.
ConstructionResult phi23curve_witness(const Rational& x, const Rational& y);

enum class Phi23Base { Third, TwoFifths };

/// phi(x,y) < 2/3 beyond the phi23curve region, built over a fixed inner
/// base (x', y', z') = (1/3, 1/3, 1/3) or (2/5, 1/5, 2/5).
ConstructionResult phi23extracurve_witness(const Rational& x, const Rational& y, Phi23Base base);

enum class ReverseBullet { One, Two };

/// phi(x,y) < 2/3 with the composite read in reverse (b joined to C',
/// c joined to B').
ConstructionResult phi23reversecurve_witness(const Rational& x, const Rational& y,
                                             ReverseBullet bullet);

/// phi(x,y) < 1/3 on x <= 1/4, y < (1-2x)^2/(3-12x+16x^2): a path
/// extension over phi12bettercurve.
ConstructionResult phi13bettercurve_witness(const Rational& x, const Rational& y);

// --- figure data -----------------------------------------------------------

struct TriangularConstructionResult {
    TriangularWitness witness;
    ConstraintReport validation;
    /// The phi-certificate at (4/7, 2/7) with claim 5/8 obtained by
    /// deleting the A-C edges.
    WitnessCertificate derived_certificate;
    std::vector<std::string> notes;
};

/// The 15-vertex graph refuting triangularity of (4/7, 2/7, 3/8).
TriangularConstructionResult figure5_triangular_witness();

} // namespace philab
