#include "philab/search.hpp"

#include "philab/check.hpp"
#include "philab/errors.hpp"
#include "philab/lp.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace philab {

namespace {

const Rational kZero(0);
const Rational kOne(1);

/// A-to-B adjacency pattern; rows[i] has bit j set when a_i ~ b_j.  The B-C
/// layer is always a perfect matching b_j ~ c_j, so it is left implicit.
struct Topology {
    int a = 0;
    int m = 0;
    std::vector<std::uint32_t> rows;
};

std::string topology_label(const Topology& t) {
    std::string s = "rows=[";
    for (int i = 0; i < t.a; ++i) {
        if (i) s += ",";
        s += std::to_string(t.rows[i]);
    }
    s += "]";
    return s;
}

// ---------------------------------------------------------------------------
// Topology enumeration
// ---------------------------------------------------------------------------

/// Nonincreasing partitions of n into exactly g positive parts.
void partitions_rec(int n, int parts, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (n >= 1 && n <= max_part) {
            cur.push_back(n);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int p = std::min(n - (parts - 1), max_part); p >= 1; --p) {
        if (p * parts < n) break;  // later parts are <= p, cannot reach n
        cur.push_back(p);
        partitions_rec(n - p, parts - 1, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions(int n, int g) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions_rec(n, g, n, cur, out);
    return out;
}

/// Deduplicates topologies up to reordering of the A-side rows and enforces
/// that every vertex on both sides has at least one neighbor (mandatory when
/// x, y > 0).
class TopologyCollector {
public:
    explicit TopologyCollector(long long budget) : budget_(budget) {}

    bool full() const { return static_cast<long long>(topos_.size()) >= budget_; }

    void add(int a, int m, std::vector<std::uint32_t> rows) {
        if (full()) return;
        std::uint32_t covered = 0;
        for (std::uint32_t r : rows) {
            if (r == 0) return;
            covered |= r;
        }
        if (covered != (1u << m) - 1) return;
        std::vector<std::uint32_t> key = rows;
        std::sort(key.begin(), key.end());
        if (!seen_.insert(std::move(key)).second) return;
        topos_.push_back(Topology{a, m, std::move(rows)});
    }

    std::vector<Topology> take() { return std::move(topos_); }

private:
    long long budget_;
    std::set<std::vector<std::uint32_t>> seen_;
    std::vector<Topology> topos_;
};

/// All bipartite patterns on a x m (small instances only).
void enumerate_full(int a, int m, TopologyCollector& col) {
    const std::uint64_t total = std::uint64_t(1) << (a * m);
    const std::uint32_t row_mask = (1u << m) - 1;
    for (std::uint64_t mask = 1; mask < total && !col.full(); ++mask) {
        std::vector<std::uint32_t> rows(a);
        for (int i = 0; i < a; ++i)
            rows[i] = static_cast<std::uint32_t>(mask >> (i * m)) & row_mask;
        col.add(a, m, std::move(rows));
    }
}

/// Cell types of the block pattern: empty, identity matching, complete.
enum CellType { kEmpty = 0, kIdent = 1, kComplete = 2 };

bool valid_types(const std::vector<int>& t, int ga, int gb, const std::vector<int>& pa,
                 const std::vector<int>& pb) {
    for (int i = 0; i < ga; ++i) {
        int ident = 0, comp = 0, nonzero = 0;
        for (int j = 0; j < gb; ++j) {
            const int v = t[i * gb + j];
            if (v == kIdent) {
                if (pa[i] != pb[j]) return false;
                ++ident;
            }
            if (v == kComplete) ++comp;
            if (v != kEmpty) ++nonzero;
        }
        if (nonzero == 0 || ident > 1 || comp > 1) return false;
    }
    for (int j = 0; j < gb; ++j) {
        int ident = 0, comp = 0, nonzero = 0;
        for (int i = 0; i < ga; ++i) {
            const int v = t[i * gb + j];
            if (v == kIdent) ++ident;
            if (v == kComplete) ++comp;
            if (v != kEmpty) ++nonzero;
        }
        if (nonzero == 0 || ident > 1 || comp > 1) return false;
    }
    return true;
}

std::vector<std::uint32_t> build_rows(const std::vector<int>& t, int ga, int gb,
                                      const std::vector<int>& pa, const std::vector<int>& pb,
                                      const std::vector<int>& offa,
                                      const std::vector<int>& offb) {
    std::vector<std::uint32_t> rows(offa.back(), 0);
    for (int i = 0; i < ga; ++i) {
        for (int j = 0; j < gb; ++j) {
            const int v = t[i * gb + j];
            if (v == kEmpty) continue;
            for (int r = 0; r < pa[i]; ++r) {
                if (v == kComplete) {
                    for (int c = 0; c < pb[j]; ++c) rows[offa[i] + r] |= 1u << (offb[j] + c);
                } else {
                    rows[offa[i] + r] |= 1u << (offb[j] + r);
                }
            }
        }
    }
    return rows;
}

/// Block patterns: both sides split into at most three groups, each block
/// empty, an identity matching, or complete, with each matching/complete type
/// used at most once per block row and block column.
void enumerate_structured(int a, int m, TopologyCollector& col) {
    for (int ga = 1; ga <= 3; ++ga) {
        const auto pas = partitions(a, ga);
        for (int gb = 1; gb <= 3; ++gb) {
            const auto pbs = partitions(m, gb);
            for (const auto& pa : pas) {
                for (const auto& pb : pbs) {
                    std::vector<int> offa(ga + 1, 0);
                    for (int i = 0; i < ga; ++i) offa[i + 1] = offa[i] + pa[i];
                    std::vector<int> offb(gb + 1, 0);
                    for (int j = 0; j < gb; ++j) offb[j + 1] = offb[j] + pb[j];
                    const int cells = ga * gb;
                    std::vector<int> t(cells, 0);
                    while (true) {
                        if (valid_types(t, ga, gb, pa, pb)) {
                            col.add(a, m, build_rows(t, ga, gb, pa, pb, offa, offb));
                            if (col.full()) return;
                        }
                        int i = 0;
                        while (i < cells && t[i] == kComplete) t[i++] = kEmpty;
                        if (i == cells) break;
                        ++t[i];
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Linear programs
// ---------------------------------------------------------------------------

/// All reduced fractions p/q with 0 < p/q <= 1/m and q <= 100, ascending.
std::vector<Rational> y_grid(int m) {
    std::vector<Rational> ys;
    for (int q = 1; q <= 100; ++q)
        for (int p = 1; p * m <= q; ++p)
            if (std::gcd(p, q) == 1) ys.emplace_back(p, q);
    std::sort(ys.begin(), ys.end());
    return ys;
}

/// Maximal x for which the topology admits weights with every second
/// neighborhood below z (nonstrict) at the given y; nullopt when none exist.
std::optional<Rational> max_x(const Topology& t, Mode mode, const Rational& z,
                              const Rational& y) {
    const int a = t.a, m = t.m;
    LinearProgram lp;
    lp.n = a + m + 1;
    const std::size_t xv = static_cast<std::size_t>(a + m);
    lp.c.assign(lp.n, kZero);
    lp.c[xv] = kOne;
    {
        LpRow& r = lp.add_row(Rel::Eq, kOne);
        for (int i = 0; i < a; ++i) r.a[i] = kOne;
    }
    {
        LpRow& r = lp.add_row(Rel::Eq, kOne);
        for (int j = 0; j < m; ++j) r.a[a + j] = kOne;
    }
    for (int i = 0; i < a; ++i) {  // A -> B outweight >= x
        LpRow& r = lp.add_row(Rel::Ge, kZero);
        for (int j = 0; j < m; ++j)
            if (t.rows[i] >> j & 1) r.a[a + j] = kOne;
        r.a[xv] = Rational(-1);
    }
    for (int j = 0; j < m; ++j) {  // second neighborhood of c_j inside A
        LpRow& r = lp.add_row(Rel::Le, z);
        for (int i = 0; i < a; ++i)
            if (t.rows[i] >> j & 1) r.a[i] = kOne;
    }
    if (mode == Mode::Psi) {
        for (int j = 0; j < m; ++j) {  // B -> A outweight >= x
            LpRow& r = lp.add_row(Rel::Ge, kZero);
            for (int i = 0; i < a; ++i)
                if (t.rows[i] >> j & 1) r.a[i] = kOne;
            r.a[xv] = Rational(-1);
        }
        for (int j = 0; j < m; ++j) {  // C -> B outweight: w(b_j) >= y
            LpRow& r = lp.add_row(Rel::Ge, y);
            r.a[a + j] = kOne;
        }
    }
    const LpResult res = solve_lp(lp);
    if (res.status == LpStatus::Infeasible) return std::nullopt;
    if (res.status != LpStatus::Optimal)
        throw ConsistencyError("search: x maximization came back unbounded");
    return res.value;
}

struct GapSolution {
    Rational gap;
    std::vector<Rational> w_a;
    std::vector<Rational> w_b;
};

/// At fixed x, maximize the slack g with every second neighborhood <= z - g.
std::optional<GapSolution> max_gap(const Topology& t, Mode mode, const Rational& z,
                                   const Rational& y, const Rational& x) {
    const int a = t.a, m = t.m;
    LinearProgram lp;
    lp.n = a + m + 1;
    const std::size_t gv = static_cast<std::size_t>(a + m);
    lp.c.assign(lp.n, kZero);
    lp.c[gv] = kOne;
    {
        LpRow& r = lp.add_row(Rel::Eq, kOne);
        for (int i = 0; i < a; ++i) r.a[i] = kOne;
    }
    {
        LpRow& r = lp.add_row(Rel::Eq, kOne);
        for (int j = 0; j < m; ++j) r.a[a + j] = kOne;
    }
    for (int i = 0; i < a; ++i) {
        LpRow& r = lp.add_row(Rel::Ge, x);
        for (int j = 0; j < m; ++j)
            if (t.rows[i] >> j & 1) r.a[a + j] = kOne;
    }
    for (int j = 0; j < m; ++j) {
        LpRow& r = lp.add_row(Rel::Le, z);
        for (int i = 0; i < a; ++i)
            if (t.rows[i] >> j & 1) r.a[i] = kOne;
        r.a[gv] = kOne;
    }
    if (mode == Mode::Psi) {
        for (int j = 0; j < m; ++j) {
            LpRow& r = lp.add_row(Rel::Ge, x);
            for (int i = 0; i < a; ++i)
                if (t.rows[i] >> j & 1) r.a[i] = kOne;
        }
        for (int j = 0; j < m; ++j) {
            LpRow& r = lp.add_row(Rel::Ge, y);
            r.a[a + j] = kOne;
        }
    }
    const LpResult res = solve_lp(lp);
    if (res.status == LpStatus::Infeasible) return std::nullopt;
    if (res.status != LpStatus::Optimal)
        throw ConsistencyError("search: gap maximization came back unbounded");
    GapSolution sol;
    sol.gap = res.value;
    sol.w_a.assign(res.x.begin(), res.x.begin() + a);
    sol.w_b.assign(res.x.begin() + a, res.x.begin() + a + m);
    return sol;
}

WitnessCertificate make_certificate(const Topology& t, Mode mode, const Rational& x,
                                    const Rational& y, const std::vector<Rational>& w_a,
                                    const std::vector<Rational>& w_b) {
    TripartiteWeightedGraph g;
    for (int i = 0; i < t.a; ++i) g.add_vertex(Part::A, "a" + std::to_string(i + 1), w_a[i]);
    for (int j = 0; j < t.m; ++j) g.add_vertex(Part::B, "b" + std::to_string(j + 1), w_b[j]);
    for (int j = 0; j < t.m; ++j)
        g.add_vertex(Part::C, "c" + std::to_string(j + 1), Rational(1, t.m));
    for (int i = 0; i < t.a; ++i)
        for (int j = 0; j < t.m; ++j)
            if (t.rows[i] >> j & 1)
                g.add_edge("a" + std::to_string(i + 1), "b" + std::to_string(j + 1));
    for (int j = 0; j < t.m; ++j)
        g.add_edge("b" + std::to_string(j + 1), "c" + std::to_string(j + 1));
    g.finalize();

    WitnessCertificate cert;
    cert.mode = mode;
    cert.x = x;
    cert.y = y;
    cert.claimed_bound = witness_value(g);
    cert.strict = false;
    cert.provenance = "bad-pair search, " + topology_label(t);
    cert.graph = std::move(g);
    return cert;
}

// ---------------------------------------------------------------------------
// Pareto frontier over (x, y)
// ---------------------------------------------------------------------------

struct FrontierEntry {
    Rational x;
    Rational y;
    int topo = -1;
};

bool dominates(const Rational& x1, const Rational& y1, const Rational& x2,
               const Rational& y2) {
    return x1 >= x2 && y1 >= y2 && (x1 > x2 || y1 > y2);
}

void frontier_insert(std::vector<FrontierEntry>& frontier, FrontierEntry e) {
    for (const FrontierEntry& f : frontier) {
        if (f.x == e.x && f.y == e.y) return;
        if (dominates(f.x, f.y, e.x, e.y)) return;
    }
    frontier.erase(std::remove_if(frontier.begin(), frontier.end(),
                                  [&](const FrontierEntry& f) {
                                      return dominates(e.x, e.y, f.x, f.y);
                                  }),
                   frontier.end());
    frontier.push_back(std::move(e));
}

/// Largest grid rational strictly below x (denominator at most 100).
Rational strict_below_snap(const Rational& x) {
    const Rational s = best_below_with_den(x, 100);
    if (s < x) return s;
    // Adjacent denominator<=100 fractions are at least 1/9900 apart, so
    // stepping down by 1/20000 cannot skip the predecessor.
    return best_below_with_den(x - Rational(1, 20000), 100);
}

/// What one topology offers at one grid y: the nonstrict optimum xbar, and
/// the best grid x achievable with every second neighborhood strictly below
/// z (nullopt when there is none).
struct PointOffer {
    std::optional<Rational> xbar;
    std::optional<Rational> entry;
};

/// Walks the (nonincreasing) map y -> max x for one topology, solving only
/// enough grid points to recover every Pareto-relevant plateau.  A point
/// enters the frontier only when its x is strictly achievable: either the
/// optimum xbar itself leaves slack below z, or some smaller x does -- and
/// since the feasible (x, slack) region is convex with slack nonincreasing
/// in x, slack anywhere implies slack at every x short of xbar, so the grid
/// predecessor of xbar works.  Topologies that cannot drop below z at all
/// die after one probe, and boxes already dominated by the running frontier
/// are skipped wholesale.
void scan_topology(const Topology& t, int topo_index, Mode mode, const Rational& z,
                   const std::vector<Rational>& ys, std::vector<FrontierEntry>& frontier) {
    // Cheap structural rejections: a B-vertex adjacent to all of A pins the
    // witness at 1, and, when z <= 1/2, two B-vertices whose A-neighborhoods
    // jointly cover A pin it at 1/2 or more.
    const std::uint32_t full_a = (1u << t.a) - 1;
    std::vector<std::uint32_t> cols(t.m, 0);
    for (int i = 0; i < t.a; ++i)
        for (int j = 0; j < t.m; ++j)
            if (t.rows[i] >> j & 1) cols[j] |= 1u << i;
    for (int j = 0; j < t.m; ++j)
        if (cols[j] == full_a) return;
    if (Rational(2) * z <= kOne) {
        for (int j = 0; j < t.m; ++j)
            for (int k = j + 1; k < t.m; ++k)
                if ((cols[j] | cols[k]) == full_a) return;
    }

    std::map<int, PointOffer> cache;
    auto value = [&](int i) -> const PointOffer& {
        auto it = cache.find(i);
        if (it == cache.end()) {
            PointOffer offer;
            offer.xbar = max_x(t, mode, z, ys[i]);
            if (offer.xbar) {
                std::optional<Rational> x_e;
                const auto at_opt = max_gap(t, mode, z, ys[i], *offer.xbar);
                if (at_opt && at_opt->gap > kZero) {
                    x_e = best_below_with_den(*offer.xbar, 100);
                } else {
                    const auto anywhere = max_gap(t, mode, z, ys[i], kZero);
                    if (anywhere && anywhere->gap > kZero)
                        x_e = strict_below_snap(*offer.xbar);
                }
                if (x_e && *x_e > kZero) {
                    offer.entry = *x_e;
                    frontier_insert(frontier, FrontierEntry{*x_e, ys[i], topo_index});
                }
            }
            it = cache.emplace(i, std::move(offer)).first;
        }
        return it->second;
    };
    auto rec = [&](auto&& self, int lo, int hi) -> void {
        const PointOffer& plo = value(lo);
        // Nothing strictly achievable at lo kills everything above: both the
        // optimum and the slack only shrink as y grows.
        if (!plo.entry) return;
        const PointOffer& phi_ = value(hi);
        if (phi_.entry && *plo.entry == *phi_.entry) return;  // one plateau
        if (hi - lo <= 1) return;
        const Rational box_x = best_below_with_den(*plo.xbar, 100);
        for (const FrontierEntry& f : frontier)
            if (f.x >= box_x && f.y >= ys[hi]) return;  // whole box dominated
        const int mid = lo + (hi - lo) / 2;
        self(self, lo, mid);
        self(self, mid, hi);
    };
    if (ys.empty()) return;
    if (ys.size() == 1) {
        value(0);
        return;
    }
    rec(rec, 0, static_cast<int>(ys.size()) - 1);
}

}  // namespace

BadPairResult search_bad_pairs(Mode mode, const Rational& z, int a_size, int m_size,
                               long long budget) {
    if (mode == Mode::Xi)
        throw std::invalid_argument("search_bad_pairs: mode must be phi or psi");
    if (a_size < 1 || a_size > 9 || m_size < 1 || m_size > 9)
        throw std::invalid_argument("search_bad_pairs: part sizes must be between 1 and 9");
    if (!(z > kZero) || z > kOne)
        throw std::invalid_argument("search_bad_pairs: z must lie in (0, 1]");
    if (budget < 1) budget = 1;

    TopologyCollector collector(budget);
    if (a_size * m_size <= 12)
        enumerate_full(a_size, m_size, collector);
    else
        enumerate_structured(a_size, m_size, collector);
    const std::vector<Topology> topologies = collector.take();
    const std::vector<Rational> ys = y_grid(m_size);

    std::vector<FrontierEntry> frontier;
    for (int i = 0; i < static_cast<int>(topologies.size()); ++i)
        scan_topology(topologies[i], i, mode, z, ys, frontier);

    // Phase two: pin exact weights at each surviving frontier point.  Every
    // entry was certified strictly achievable during the scan, so the slack
    // must come out positive here.
    std::vector<BadPair> pairs;
    for (const FrontierEntry& e : frontier) {
        const auto sol = max_gap(topologies[e.topo], mode, z, e.y, e.x);
        if (!sol || !(sol->gap > kZero))
            throw ConsistencyError("search: frontier point lost its slack below z");
        WitnessCertificate cert =
            make_certificate(topologies[e.topo], mode, e.x, e.y, sol->w_a, sol->w_b);
        pairs.push_back(BadPair{e.x, e.y, std::move(cert)});
    }

    // Backing off may have introduced dominated pairs; filter once more.
    std::vector<BadPair> kept;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < pairs.size() && !drop; ++j) {
            if (j == i) continue;
            if (dominates(pairs[j].x, pairs[j].y, pairs[i].x, pairs[i].y)) drop = true;
            if (pairs[j].x == pairs[i].x && pairs[j].y == pairs[i].y && j < i) drop = true;
        }
        if (!drop) kept.push_back(std::move(pairs[i]));
    }
    std::sort(kept.begin(), kept.end(), [](const BadPair& l, const BadPair& r) {
        if (l.y != r.y) return l.y < r.y;
        return r.x < l.x;
    });

    for (const BadPair& p : kept) {
        const ConstraintReport report = verify_certificate(p.certificate);
        if (!report.satisfied)
            throw ConsistencyError("search: produced certificate failed re-validation");
        if (!(p.certificate.claimed_bound < z))
            throw ConsistencyError("search: produced certificate does not beat z");
    }
    return BadPairResult{mode, z, std::move(kept)};
}

void write_bad_pair_files(const BadPairResult& result, const std::string& directory) {
    std::filesystem::create_directories(directory);
    std::ofstream index(std::filesystem::path(directory) / "index.csv",
                        std::ios::binary);
    if (!index) throw std::runtime_error("cannot open " + directory + "/index.csv");
    index << "x,y,z,mode,certificate_path\n";
    for (std::size_t i = 0; i < result.pairs.size(); ++i) {
        const std::string name = "badpair_" + std::to_string(i + 1) + ".phiwit";
        write_phiwit_file(result.pairs[i].certificate,
                          (std::filesystem::path(directory) / name).string());
        index << result.pairs[i].x.str() << "," << result.pairs[i].y.str() << ","
              << result.z.str() << "," << mode_name(result.mode) << "," << name << "\n";
    }
    if (!index.good()) throw std::runtime_error("failed writing " + directory + "/index.csv");
}

}  // namespace philab
