#pragma once

#include "philab/check.hpp"
#include "philab/errors.hpp"
#include "philab/witness.hpp"

namespace philab {

/// A graph refuting triangularity of the triple (x, y, z): triangle-free,
/// with w(N(a) in B) >= x for a in A, w(N(b) in C) >= y for b in B, and
/// w(N(c) in A) >= z for c in C. A-C edges are allowed (and necessary).
/// Starred coordinates enforce the matching reverse-degree bullets:
///   x*: w(N(b) in A) >= x for b in B;
///   y*: w(N(c) in B) >= y for c in C;
///   z*: w(N(a) in C) >= z for a in A.
struct TriangularWitness {
    TripartiteWeightedGraph graph;
    Rational x, y, z;
    bool star_x = false;
    bool star_y = false;
    bool star_z = false;
};

/// Verifies triangle-freeness (exhaustive scan through B), the three
/// forward degree bullets, and each starred reverse bullet, all in
/// weighted form.
ConstraintReport check_triangular_witness(const TriangularWitness& tw);

/// Adds an A-C edge uv whenever u is not in N^2_A(v). The result refutes
/// (x, y, 1 - claim), with {x*, y*} set when the certificate is
/// biconstrained. Requires cert.mode in {phi, psi} and claim < 1.
TriangularWitness witness_to_triangular(const WitnessCertificate& cert);

/// Deletes all A-C edges, producing a certificate with claim 1 - z: phi in
/// general, psi when both x* and y* are flagged. The input must verify;
/// other flag patterns are unsupported and rejected.
WitnessCertificate triangular_to_witness(const TriangularWitness& tw);

} // namespace philab
