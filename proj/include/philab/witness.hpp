#pragma once

#include "philab/graph.hpp"
#include "philab/rational.hpp"

#include <iosfwd>
#include <string>

namespace philab {

/// Which of the three graph classes a statement refers to: phi is
/// (x,y)-constrained, psi is (x,y)-biconstrained, xi is (x,y)-exact.
enum class Mode { Phi, Psi, Xi };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Phi: return "phi";
        case Mode::Psi: return "psi";
        default: return "xi";
    }
}

/// A proof object for an upper bound: a concrete weighted graph in the
/// claimed class whose witness value stays at or (if strict) strictly
/// below claimed_bound.
struct WitnessCertificate {
    TripartiteWeightedGraph graph;
    Mode mode = Mode::Phi;
    Rational x;
    Rational y;
    Rational claimed_bound;
    bool strict = false;
    std::string provenance;
};

struct PhiwitParseError : std::runtime_error {
    PhiwitParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    int line_no;
};

/// phiwit v1: line-oriented text format.
///   mode phi|psi|xi
///   x p/q
///   y p/q
///   claim p/q strict|nonstrict
///   vertex <A|B|C> <id> <p/q>
///   edge <id> <id>
/// '#' starts a comment; unknown keys are rejected; decimals are rejected.
WitnessCertificate parse_phiwit(std::istream& in);
WitnessCertificate parse_phiwit_file(const std::string& path);
void serialize_phiwit(const WitnessCertificate& cert, std::ostream& out);
void write_phiwit_file(const WitnessCertificate& cert, const std::string& path);

} // namespace philab
