#include "philab/mapper.hpp"

#include "philab/constructions.hpp"
#include "philab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace philab {

namespace {

const Rational kZero(0);
const Rational kOne(1);

// Fixed presentation colors (good / bad / unknown).
constexpr const char* kGoodColor = "#2e7d32";
constexpr const char* kBadColor = "#c62828";
constexpr const char* kUnknownColor = "#bdbdbd";

bool serves(Mode have, Mode query) {
    if (query == Mode::Phi) return true;
    if (query == Mode::Psi) return have != Mode::Phi;
    return have == Mode::Xi;
}

Mode parse_mode(const std::string& name) {
    if (name == "phi") return Mode::Phi;
    if (name == "psi") return Mode::Psi;
    if (name == "xi") return Mode::Xi;
    throw std::runtime_error("unknown mode '" + name + "'");
}

Rational parse_rational_or_throw(const std::string& text, const char* what) {
    const auto r = Rational::parse(text);
    if (!r) throw std::runtime_error(std::string("bad ") + what + " '" + text + "'");
    return *r;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// The running best bound at one grid cell.
struct Best {
    Rational value;
    bool strict = false;
    std::string provenance;
};

void improve_upper(Best& cur, const Rational& value, bool strict, const std::string& prov) {
    if (value < cur.value || (value == cur.value && strict && !cur.strict)) {
        cur.value = value;
        cur.strict = strict;
        cur.provenance = prov;
    }
}

/// Applies the classification rule and the never-wrong cross-check.
RegionStatus decide(const Rational& z, const Best& lower, const Best& upper,
                    const Rational& x, const Rational& y, std::string& prov_out) {
    const bool good = lower.value >= z;
    const bool bad = upper.value < z || (upper.value == z && upper.strict);
    if (good && bad)
        throw ConsistencyError("region map: (" + x.str() + ", " + y.str() +
                               ") classified both good and bad (lower " + lower.value.str() +
                               " via " + lower.provenance + ", upper " + upper.value.str() +
                               " via " + upper.provenance + ")");
    if (lower.value > upper.value ||
        (lower.value == upper.value && (lower.strict || upper.strict)))
        throw ConsistencyError("region map: bounds cross at (" + x.str() + ", " + y.str() +
                               "): lower " + lower.value.str() + " (" + lower.provenance +
                               "), upper " + upper.value.str() + " (" + upper.provenance + ")");
    if (good) {
        prov_out = lower.provenance;
        if (lower.value == z)
            prov_out += std::string(" [boundary: ") + (lower.strict ? "strict" : "nonstrict") + "]";
        return RegionStatus::ProvenGood;
    }
    if (bad) {
        prov_out = upper.provenance;
        if (upper.value == z) prov_out += " [boundary: strict]";
        return RegionStatus::ProvenBad;
    }
    prov_out = "unresolved";
    return RegionStatus::Unknown;
}

Classification make_cell(Mode mode, const Rational& z, const Rational& x, const Rational& y,
                         const Best& lower, const Best& upper) {
    Classification c;
    c.x = x;
    c.y = y;
    c.status = decide(z, lower, upper, x, y, c.provenance);
    c.lower = CertifiedBound{Direction::Lower, lower.value, lower.strict, lower.provenance, mode};
    c.upper = CertifiedBound{Direction::Upper, upper.value, upper.strict, upper.provenance, mode};
    return c;
}

// ---------------------------------------------------------------------------
// Shared per-grid bound tables (z-independent)
// ---------------------------------------------------------------------------

struct GridData {
    std::vector<Best> lower;  // index (j-1)*d + (i-1)
    std::vector<Best> upper;
};

void run_rows(int d, int jobs, const std::function<void(int)>& row_fn) {
    jobs = std::max(1, std::min(jobs, d));
    if (jobs == 1) {
        for (int j = 1; j <= d; ++j) row_fn(j);
        return;
    }
    std::atomic<int> next{1};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) {
        threads.emplace_back([&] {
            try {
                for (int j; (j = next.fetch_add(1)) <= d;) row_fn(j);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

/// Best lower bound per cell, straight from the theorem predicates.
void fill_lower(Mode mode, int d, long long effort, int jobs, std::vector<Best>& grid) {
    run_rows(d, jobs, [&](int j) {
        const Rational y(j, d);
        for (int i = 1; i <= d; ++i) {
            const Rational x(i, d);
            Best best{kZero, false, "maxbound"};
            for (const CertifiedBound& b : lower_bounds(mode, x, y, effort)) {
                if (b.value > best.value || (b.value == best.value && b.strict && !best.strict)) {
                    best = Best{b.value, b.strict, b.provenance};
                }
            }
            grid[static_cast<std::size_t>(j - 1) * d + (i - 1)] = best;
        }
    });
}

/// Minimum of the cyclic-shift values (ceil(ki/d) + ceil(kj/d) - 1) / k
/// over 1 <= k <= cap, in plain integer arithmetic. The value formula is
/// the certified witness value of the cyclic construction, enforced
/// independently by the construction tests.
void fill_cyclic(int d, long long effort, int jobs, std::vector<Best>& grid) {
    const long long cap = std::max<long long>(1, std::min<long long>(effort, 3 * d));
    run_rows(d, jobs, [&](int j) {
        for (int i = 1; i <= d; ++i) {
            long long best_num = 1, best_den = 1, best_k = 1;
            for (long long k = 2; k <= cap; ++k) {
                const long long num = (k * i + d - 1) / d + (k * j + d - 1) / d - 1;
                if (num * best_den < best_num * k) {
                    best_num = num;
                    best_den = k;
                    best_k = k;
                }
            }
            Best& cell = grid[static_cast<std::size_t>(j - 1) * d + (i - 1)];
            improve_upper(cell, Rational(best_num) / Rational(best_den), false,
                          "cyclic k=" + std::to_string(best_k));
        }
    });
}

/// An upper bound valid on the whole rectangle i <= i_max, j <= j_max.
struct GridAnchor {
    int i_max = 0;
    int j_max = 0;
    Rational value;
    std::string provenance;
};

long long to_ll_clamped(const BigInt& v, long long cap) {
    if (v < 0) return 0;
    if (v > cap) return cap;
    return static_cast<long long>(v);
}

void add_anchor(std::vector<GridAnchor>& out, int d, const Rational& x0, const Rational& y0,
                const Rational& value, const std::string& provenance) {
    const long long i_max = to_ll_clamped((x0 * Rational(d)).floor(), d);
    const long long j_max = to_ll_clamped((y0 * Rational(d)).floor(), d);
    if (i_max < 1 || j_max < 1) return;
    out.push_back(GridAnchor{static_cast<int>(i_max), static_cast<int>(j_max), value, provenance});
}

/// One curve construction, attempted pointwise along the grid.
struct CurveFamily {
    std::string label;
    std::function<ConstructionResult(const Rational&, const Rational&)> attempt;
};

std::vector<CurveFamily> curve_families(long long effort) {
    std::vector<CurveFamily> fams;
    const long long k_cap = std::max<long long>(1, std::min<long long>(effort, 8));
    for (long long k = 1; k <= k_cap; ++k) {
        fams.push_back({"psi12curve k=" + std::to_string(k),
                        [k](const Rational& x, const Rational& y) {
                            return psi12curve_witness(k, x, y);
                        }});
        fams.push_back({"phi12curve k=" + std::to_string(k),
                        [k](const Rational& x, const Rational& y) {
                            return phi12curve_witness(k, x, y);
                        }});
    }
    fams.push_back({"phi12bettercurve", [](const Rational& x, const Rational& y) {
                        return phi12bettercurve_witness(x, y);
                    }});
    fams.push_back({"phi13bettercurve", [](const Rational& x, const Rational& y) {
                        return phi13bettercurve_witness(x, y);
                    }});
    fams.push_back({"phi23curve", [](const Rational& x, const Rational& y) {
                        return phi23curve_witness(x, y);
                    }});
    fams.push_back({"psi12extracurve", [](const Rational& x, const Rational& y) {
                        return psi12extracurve_witness(x, y, ExtraVariant::Forward);
                    }});
    fams.push_back({"psi12extracurve reversed", [](const Rational& x, const Rational& y) {
                        return psi12extracurve_witness(x, y, ExtraVariant::Reversed);
                    }});
    fams.push_back({"psi23extra first", [](const Rational& x, const Rational& y) {
                        return psi23extra_witness(x, y, Psi23Variant::First);
                    }});
    fams.push_back({"psi23extra second", [](const Rational& x, const Rational& y) {
                        return psi23extra_witness(x, y, Psi23Variant::Second);
                    }});
    fams.push_back({"phi23extracurve third", [](const Rational& x, const Rational& y) {
                        return phi23extracurve_witness(x, y, Phi23Base::Third);
                    }});
    fams.push_back({"phi23extracurve 2/5", [](const Rational& x, const Rational& y) {
                        return phi23extracurve_witness(x, y, Phi23Base::TwoFifths);
                    }});
    fams.push_back({"phi23reversecurve one", [](const Rational& x, const Rational& y) {
                        return phi23reversecurve_witness(x, y, ReverseBullet::One);
                    }});
    fams.push_back({"phi23reversecurve two", [](const Rational& x, const Rational& y) {
                        return phi23reversecurve_witness(x, y, ReverseBullet::Two);
                    }});
    return fams;
}

/// For each family and each grid column, builds one certificate at the
/// highest applicable grid row (applicability is downward closed in y);
/// the certificate's own coordinates become the anchor.
void collect_curve_anchors(Mode mode, int d, long long effort, std::vector<GridAnchor>& out) {
    for (const CurveFamily& fam : curve_families(effort)) {
        bool family_serves = true;
        for (int i = 1; i <= d && family_serves; ++i) {
            const Rational x(i, d);
            for (int j = d; j >= 1; --j) {
                ConstructionResult res;
                try {
                    res = fam.attempt(x, Rational(j, d));
                } catch (const InapplicableError&) {
                    continue;
                }
                if (!res.trusted()) continue;
                if (!serves(res.certificate.mode, mode)) {
                    family_serves = false;
                    break;
                }
                add_anchor(out, d, res.certificate.x, res.certificate.y,
                           res.certificate.claimed_bound, res.certificate.provenance);
                break;
            }
        }
    }
}

/// Folds every anchor's rectangle into the per-cell best upper bound with
/// a single right-to-left column sweep.
void apply_anchors(int d, const std::vector<GridAnchor>& anchors, std::vector<Best>& grid) {
    std::vector<std::vector<const GridAnchor*>> by_column(d + 1);
    for (const GridAnchor& a : anchors) by_column[a.i_max].push_back(&a);
    std::vector<Best> carry(d + 1, Best{Rational(2), false, ""});
    for (int i = d; i >= 1; --i) {
        for (const GridAnchor* a : by_column[i])
            for (int j = 1; j <= a->j_max; ++j)
                improve_upper(carry[j], a->value, false, a->provenance);
        for (int j = 1; j <= d; ++j) {
            const Best& c = carry[j];
            if (c.value <= kOne)
                improve_upper(grid[static_cast<std::size_t>(j - 1) * d + (i - 1)], c.value,
                              c.strict, c.provenance);
        }
    }
}

const GridData& grid_data(Mode mode, int d, long long effort, int jobs) {
    using Key = std::tuple<int, int, long long>;
    static std::map<Key, GridData> cache;
    static std::mutex cache_mutex;
    const Key key{static_cast<int>(mode), d, effort};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    GridData data;
    data.lower.assign(static_cast<std::size_t>(d) * d, Best{});
    data.upper.assign(static_cast<std::size_t>(d) * d, Best{kOne, false, "trivial (value <= 1)"});
    fill_lower(mode, d, effort, jobs, data.lower);
    fill_cyclic(d, effort, jobs, data.upper);

    std::vector<GridAnchor> anchors;
    for (const UpperAnchor& a : figure_upper_anchors(mode))
        add_anchor(anchors, d, a.x0, a.y0, a.bound.value, a.bound.provenance);
    collect_curve_anchors(mode, d, effort, anchors);
    if (mode == Mode::Phi) {
        // phi is symmetric in (x, y); transfer every anchor across the
        // diagonal so the emitted map is exactly symmetric.
        const std::size_t n = anchors.size();
        for (std::size_t idx = 0; idx < n; ++idx) {
            const GridAnchor a = anchors[idx];
            anchors.push_back(
                GridAnchor{a.j_max, a.i_max, a.value, a.provenance + " (mirrored)"});
        }
    }
    apply_anchors(d, anchors, data.upper);

    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, std::move(data)).first->second;
}

// ---------------------------------------------------------------------------
// CSV helpers
// ---------------------------------------------------------------------------

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += "\"";
    return q;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

RegionStatus parse_status(const std::string& name) {
    if (name == "ProvenGood") return RegionStatus::ProvenGood;
    if (name == "ProvenBad") return RegionStatus::ProvenBad;
    if (name == "Unknown") return RegionStatus::Unknown;
    throw std::runtime_error("unknown status '" + name + "'");
}

bool parse_strict(const std::string& name) {
    if (name == "strict") return true;
    if (name == "nonstrict") return false;
    throw std::runtime_error("unknown strictness '" + name + "'");
}

// ---------------------------------------------------------------------------
// SVG helpers
// ---------------------------------------------------------------------------

std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

/// XML comments must not contain "--"; soften the command line for the
/// comment and keep the exact text in a <desc> element.
std::string comment_safe(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == '-') {
            out += "- -";
            ++i;
        } else {
            out += s[i];
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void svg_header(std::ostream& os, double width, double height, const std::string& command_line) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width)
       << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height)
       << "\">\n";
    if (!command_line.empty()) {
        os << "<!-- generated by: " << comment_safe(svg_escape(command_line)) << " -->\n";
        os << "<desc>generated by: " << svg_escape(command_line) << "</desc>\n";
    }
    os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" fill=\"white\"/>\n";
}

void svg_axes(std::ostream& os, double left, double top, double plot, const std::string& x_label,
              const std::string& y_label) {
    const double bottom = top + plot;
    os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
       << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\""
       << fmt(left + plot) << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\" "
       << "stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << fmt(left + plot / 2) << "\" y=\"" << fmt(bottom + 40)
       << "\" font-size=\"18\" text-anchor=\"middle\">" << svg_escape(x_label) << "</text>\n";
    os << "<text x=\"" << fmt(left - 40) << "\" y=\"" << fmt(top + plot / 2)
       << "\" font-size=\"18\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(left - 40)
       << " " << fmt(top + plot / 2) << ")\">" << svg_escape(y_label) << "</text>\n";
    os << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(bottom + 18)
       << "\" font-size=\"12\" text-anchor=\"middle\">0</text>\n";
    os << "<text x=\"" << fmt(left + plot) << "\" y=\"" << fmt(bottom + 18)
       << "\" font-size=\"12\" text-anchor=\"middle\">1</text>\n";
    os << "<text x=\"" << fmt(left - 12) << "\" y=\"" << fmt(top + 5)
       << "\" font-size=\"12\" text-anchor=\"end\">1</text>\n";
}

}  // namespace

const char* status_name(RegionStatus status) {
    switch (status) {
        case RegionStatus::ProvenGood: return "ProvenGood";
        case RegionStatus::ProvenBad: return "ProvenBad";
        default: return "Unknown";
    }
}

const Classification& RegionMap::at(int i, int j) const {
    if (i < 1 || i > resolution || j < 1 || j > resolution)
        throw std::out_of_range("RegionMap::at: index outside grid");
    return cells[static_cast<std::size_t>(j - 1) * resolution + (i - 1)];
}

Classification classify_point(Mode mode, const Rational& z, const Rational& x, const Rational& y,
                              long long effort) {
    const BoundInterval iv = best_interval(mode, x, y, effort);
    const Best lower{iv.best_lower.value, iv.best_lower.strict, iv.best_lower.provenance};
    const Best upper{iv.best_upper.value, iv.best_upper.strict, iv.best_upper.provenance};
    return make_cell(mode, z, x, y, lower, upper);
}

RegionMap build_map(Mode mode, const Rational& z, int resolution, long long effort, int jobs) {
    if (resolution < 1 || resolution > 400)
        throw std::invalid_argument("build_map: resolution must lie in [1, 400]");
    if (!(z > kZero) || z > kOne)
        throw std::invalid_argument("build_map: z must lie in (0, 1]");
    if (effort < 1) effort = 1;
    if (jobs < 1) jobs = 1;

    const int d = resolution;
    const GridData& data = grid_data(mode, d, effort, jobs);

    RegionMap map;
    map.mode = mode;
    map.z = z;
    map.resolution = d;
    map.cells.reserve(static_cast<std::size_t>(d) * d);
    for (int j = 1; j <= d; ++j) {
        for (int i = 1; i <= d; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j - 1) * d + (i - 1);
            map.cells.push_back(
                make_cell(mode, z, Rational(i, d), Rational(j, d), data.lower[idx],
                          data.upper[idx]));
        }
    }
    return map;
}

void emit_csv(const RegionMap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "# philab-map mode=" << mode_name(map.mode) << " z=" << map.z.str()
        << " resolution=" << map.resolution << "\n";
    out << "x,y,status,provenance,lower,upper,lower_strict,upper_strict\n";
    for (const Classification& c : map.cells) {
        out << c.x.str() << "," << c.y.str() << "," << status_name(c.status) << ","
            << csv_quote(c.provenance) << "," << c.lower.value.str() << "," << c.upper.value.str()
            << "," << (c.lower.strict ? "strict" : "nonstrict") << ","
            << (c.upper.strict ? "strict" : "nonstrict") << "\n";
    }
    if (!out.good()) throw std::runtime_error("failed writing " + path);
}

RegionMap parse_region_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    RegionMap map;
    {
        std::istringstream head(line);
        std::string tok;
        head >> tok;
        if (tok != "#") throw std::runtime_error(path + ": missing map header comment");
        head >> tok;
        if (tok != "philab-map") throw std::runtime_error(path + ": not a region map file");
        bool saw_mode = false, saw_z = false, saw_res = false;
        while (head >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(path + ": bad header token '" + tok + "'");
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "mode") {
                map.mode = parse_mode(val);
                saw_mode = true;
            } else if (key == "z") {
                map.z = parse_rational_or_throw(val, "z");
                saw_z = true;
            } else if (key == "resolution") {
                map.resolution = std::stoi(val);
                saw_res = true;
            } else {
                throw std::runtime_error(path + ": unknown header key '" + key + "'");
            }
        }
        if (!saw_mode || !saw_z || !saw_res)
            throw std::runtime_error(path + ": incomplete map header");
    }
    if (!std::getline(in, line) ||
        line != "x,y,status,provenance,lower,upper,lower_strict,upper_strict")
        throw std::runtime_error(path + ": missing column header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = csv_split(line);
        if (f.size() != 8) throw std::runtime_error(path + ": expected 8 fields, got row '" + line +
                                                    "'");
        Classification c;
        c.x = parse_rational_or_throw(f[0], "x");
        c.y = parse_rational_or_throw(f[1], "y");
        c.status = parse_status(f[2]);
        c.provenance = f[3];
        c.lower = CertifiedBound{Direction::Lower, parse_rational_or_throw(f[4], "lower"),
                                 parse_strict(f[6]), "", map.mode};
        c.upper = CertifiedBound{Direction::Upper, parse_rational_or_throw(f[5], "upper"),
                                 parse_strict(f[7]), "", map.mode};
        map.cells.push_back(std::move(c));
    }
    const std::size_t expect =
        static_cast<std::size_t>(map.resolution) * static_cast<std::size_t>(map.resolution);
    if (map.cells.size() != expect)
        throw std::runtime_error(path + ": cell count does not match resolution");
    return map;
}

void emit_svg(const RegionMap& map, const std::string& path, const std::string& command_line) {
    const int d = map.resolution;
    const double plot = 600.0, left = 70.0, top = 40.0;
    const double width = left + plot + 20.0, height = top + plot + 70.0;
    const double s = plot / d;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    svg_header(out, width, height, command_line);
    out << "<text x=\"" << fmt(left) << "\" y=\"" << fmt(top - 14) << "\" font-size=\"16\">"
        << svg_escape(std::string(mode_name(map.mode)) + " map, z = " + map.z.str() +
                      ", resolution " + std::to_string(d))
        << "</text>\n";
    for (const Classification& c : map.cells) {
        const char* color = c.status == RegionStatus::ProvenGood  ? kGoodColor
                            : c.status == RegionStatus::ProvenBad ? kBadColor
                                                                  : kUnknownColor;
        const double cx = left + (c.x.to_double() * d - 1.0) * s;
        const double cy = top + plot - c.y.to_double() * d * s;
        out << "<rect x=\"" << fmt(cx) << "\" y=\"" << fmt(cy) << "\" width=\"" << fmt(s + 0.4)
            << "\" height=\"" << fmt(s + 0.4) << "\" fill=\"" << color << "\"/>\n";
    }
    svg_axes(out, left, top, plot, "x", "y");
    out << "</svg>\n";
    if (!out.good()) throw std::runtime_error("failed writing " + path);
}

DiagonalPlot diagonal_plot(Mode mode, int resolution, long long effort) {
    if (resolution < 1 || resolution > 400)
        throw std::invalid_argument("diagonal_plot: resolution must lie in [1, 400]");
    DiagonalPlot plot;
    plot.mode = mode;
    plot.resolution = resolution;
    plot.points.reserve(resolution);
    for (int i = 1; i <= resolution; ++i) {
        const Rational x(i, resolution);
        plot.points.push_back(best_interval(mode, x, x, effort));
    }
    return plot;
}

void emit_diagonal_svg(const DiagonalPlot& plot, const std::string& path,
                       const std::string& command_line) {
    const int d = plot.resolution;
    const double size = 600.0, left = 70.0, top = 40.0;
    const double width = left + size + 20.0, height = top + size + 70.0;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    svg_header(out, width, height, command_line);
    const std::string fname = std::string(mode_name(plot.mode));
    out << "<text x=\"" << fmt(left) << "\" y=\"" << fmt(top - 14) << "\" font-size=\"16\">"
        << svg_escape(fname + "(x, x): certified lower (green) and upper (red) staircases")
        << "</text>\n";

    auto stair = [&](bool use_lower, const char* color) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (int i = 1; i <= d; ++i) {
            const BoundInterval& iv = plot.points[i - 1];
            const double v =
                use_lower ? iv.best_lower.value.to_double() : iv.best_upper.value.to_double();
            const double x0 = left + (i - 1) * size / d;
            const double x1 = left + i * size / d;
            const double y = top + size - v * size;
            out << fmt(x0) << "," << fmt(y) << " " << fmt(x1) << "," << fmt(y) << " ";
        }
        out << "\"/>\n";
    };
    stair(false, kBadColor);
    stair(true, kGoodColor);
    svg_axes(out, left, top, size, "x", fname + "(x, x)");
    out << "</svg>\n";
    if (!out.good()) throw std::runtime_error("failed writing " + path);
}

}  // namespace philab
