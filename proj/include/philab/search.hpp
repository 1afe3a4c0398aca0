#pragma once

#include "philab/rational.hpp"
#include "philab/witness.hpp"

#include <string>
#include <vector>

namespace philab {

struct BadPair {
    Rational x, y;
    WitnessCertificate certificate;
};

/// Output of the bad-pair search: certified points where the mode's
/// function stays strictly below z. Pairs are Pareto-maximal within the
/// searched family and sorted by increasing y (hence decreasing x).
struct BadPairResult {
    Mode mode = Mode::Psi;
    Rational z;
    std::vector<BadPair> pairs;
};

/// Searches blow-up topologies with |A| = a_size, |B| = |C| = m_size and a
/// perfect matching between B and C. The A-B layer ranges over all
/// bipartite graphs when a_size * m_size <= 12, and otherwise over a
/// structured block family (up to three groups per side; empty, identity
/// or complete blocks, each symbol at most once per block row and column).
/// Topologies are deduplicated by sorted adjacency rows and capped at
/// `budget`. For every topology, x is maximized exactly over a Farey grid
/// of y values (denominators <= 100, y <= 1/m_size) subject to witness
/// value < z; certificates are built only for frontier pairs and
/// re-validated. Sizes up to 9 per side.
BadPairResult search_bad_pairs(Mode mode, const Rational& z, int a_size, int m_size,
                               long long budget = 100000);

/// Writes one phiwit file per pair plus an index.csv with columns
/// x,y,z,mode,certificate_path into `dir` (created if needed).
void write_bad_pair_files(const BadPairResult& result, const std::string& dir);

} // namespace philab
