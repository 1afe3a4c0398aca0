#pragma once

#include "philab/bounds.hpp"
#include "philab/rational.hpp"
#include "philab/witness.hpp"

#include <string>
#include <vector>

namespace philab {

enum class RegionStatus { ProvenGood, ProvenBad, Unknown };

const char* status_name(RegionStatus status);

/// Verdict for one query point against the threshold z:
///   ProvenGood  iff the best certified lower bound establishes f >= z,
///   ProvenBad   iff the best certified upper bound establishes f < z,
///   Unknown     otherwise.
/// The deciding bound's provenance is carried; when the deciding bound sits
/// exactly on z, its strictness convention is appended to the provenance.
struct Classification {
    Rational x;
    Rational y;
    RegionStatus status = RegionStatus::Unknown;
    std::string provenance;
    CertifiedBound lower;
    CertifiedBound upper;
};

/// Pointwise classification of the grid {(i/d, j/d) : 1 <= i, j <= d}.
/// Row-major with x varying fastest: cells[(j-1)*d + (i-1)] holds the
/// point (i/d, j/d). Coordinates with x or y = 0 lie outside the domain
/// and are excluded.
struct RegionMap {
    Mode mode = Mode::Phi;
    Rational z;
    int resolution = 0;
    std::vector<Classification> cells;

    const Classification& at(int i, int j) const;
};

/// Classifies a single point from its best certified interval.
/// Raises ConsistencyError if the certified bounds would mark the point
/// both good and bad.
Classification classify_point(Mode mode, const Rational& z, const Rational& x,
                              const Rational& y, long long effort = 64);

/// Classifies the full grid. Lower bounds are evaluated pointwise; upper
/// bounds combine the cyclic family (closed form), the bundled figure
/// anchors, and curve-construction certificates built along each family's
/// applicability frontier and transferred down-left. Aborts with
/// ConsistencyError if any cell is provably good and bad at once.
/// resolution must lie in [1, 400]; jobs >= 1 splits the pointwise passes.
RegionMap build_map(Mode mode, const Rational& z, int resolution, long long effort = 64,
                    int jobs = 1);

/// Writes the map as CSV: a provenance comment line, then a header row
/// `x,y,status,provenance,lower,upper,lower_strict,upper_strict`, then one
/// row per cell in storage order. Rationals are rendered p/q, line endings
/// are LF. I/O failures raise std::runtime_error.
void emit_csv(const RegionMap& map, const std::string& path);

/// Reads back a file written by emit_csv.
RegionMap parse_region_csv(const std::string& path);

/// Renders the map as a static SVG: one square per grid point in three
/// fixed colors (good / bad / unknown), axes labeled x and y, the
/// threshold z annotated. Floating point is permitted here only. The
/// generating command line, when given, is embedded as an SVG comment.
void emit_svg(const RegionMap& map, const std::string& path,
              const std::string& command_line = "");

/// Certified enclosures of f(x, x) along the diagonal x = i/d.
struct DiagonalPlot {
    Mode mode = Mode::Phi;
    int resolution = 0;
    std::vector<BoundInterval> points;
};

DiagonalPlot diagonal_plot(Mode mode, int resolution, long long effort = 64);

/// Renders the diagonal enclosure as staircase polylines (lower and upper).
void emit_diagonal_svg(const DiagonalPlot& plot, const std::string& path,
                       const std::string& command_line = "");

}  // namespace philab
