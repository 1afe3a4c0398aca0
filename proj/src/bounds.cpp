#include "philab/bounds.hpp"

#include "philab/check.hpp"
#include "philab/constructions.hpp"
#include "philab/errors.hpp"
#include "philab/reduction.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace philab {
namespace {

const Rational kZero(0);
const Rational kOne(1);

long long to_ll(const BigInt& b) { return b.template convert_to<long long>(); }

void require_point(const char* who, const Rational& x, const Rational& y) {
    if (!(x > kZero) || !(y > kZero) || x > kOne || y > kOne)
        throw std::invalid_argument(std::string(who) + ": x and y must lie in (0, 1]");
}

/// floor(r), clamped into [-1, cap] so it always fits a long long.
long long floor_capped(const Rational& r, long long cap) {
    if (r.is_negative()) return -1;
    BigInt f = r.floor();
    if (f > cap) return cap;
    return to_ll(f);
}

void emit(std::vector<CertifiedBound>& out, Mode mode, Direction dir, Rational value, bool strict,
          std::string provenance) {
    out.push_back(CertifiedBound{dir, std::move(value), strict, std::move(provenance), mode});
}

// ---- lower bounds: theorem predicates -------------------------------------

/// Predicates proved for the constrained class; each is sound for psi and
/// xi as well (phi <= psi <= xi). Evaluated at (a, b); the mirrored pass
/// re-evaluates the asymmetric ones at (y, x), which is sound because phi
/// is symmetric in its arguments.
void phi_family(std::vector<CertifiedBound>& out, Mode mode, const Rational& a, const Rational& b,
                long long k_max, bool mirrored) {
    const std::string sfx = mirrored ? " (mirrored)" : "";

    if (!mirrored) {
        // maxbound: the value is at least max(x, y).
        emit(out, mode, Direction::Lower, max(a, b), false, "maxbound");

        // trivial: x + y > 1 forces value 1 (the irrational x + y = 1 case
        // cannot arise over the rationals).
        if (a + b > kOne) emit(out, mode, Direction::Lower, kOne, false, "trivial");

        // levelk+: value > 1/k exactly when max(x, y) > 1/k. Strict, at
        // the smallest such k. Always dominated by maxbound but kept in
        // the report for its strictness.
        {
            const Rational m = max(a, b);
            const BigInt k0 = (kOne / m).floor() + 1;
            if (k0 <= k_max)
                emit(out, mode, Direction::Lower, kOne / Rational(k0), true, "levelk+ k=" + k0.str());
        }

        if (a == b) {
            // limk1: (1-x)^k < x gives value >= 1/k on the diagonal.
            for (long long k = 1; k <= k_max; ++k) {
                if (pow(kOne - a, static_cast<unsigned>(k)) < a) {
                    emit(out, mode, Direction::Lower, Rational(1, k), false,
                         "limk1 k=" + std::to_string(k));
                    break;
                }
            }
            // limk: x >= 1/k - 1/(13k^3) gives value >= 1/k on the diagonal.
            for (long long k = 1; k <= k_max; ++k) {
                if (a >= Rational(1, k) - Rational(1, 13 * k * k * k)) {
                    emit(out, mode, Direction::Lower, Rational(1, k), false,
                         "limk k=" + std::to_string(k));
                    break;
                }
            }
        }
    }

    // 3-7: for the smallest k >= 2 with b > 1/k. k = 2 has the stronger
    // form 2a - a^2; for k >= 3 the rational formula needs its denominator
    // positive (automatic on the useful range a < 1/(k-1)).
    {
        BigInt kb = (kOne / b).floor() + 1;
        if (kb < 2) kb = 2;
        if (kb <= k_max) {
            const long long k = to_ll(kb);
            if (k == 2) {
                emit(out, mode, Direction::Lower, a * (Rational(2) - a), false, "3-7 k=2" + sfx);
            } else {
                const Rational den = Rational(k) * a * (kOne - a) + a * a - Rational(3) * a + kOne;
                const Rational num = a * (Rational(2) - Rational(3) * a);
                if (den > kZero && num > kZero)
                    emit(out, mode, Direction::Lower, num / den, false,
                         "3-7 k=" + std::to_string(k) + sfx);
            }
        }
    }

    // 5-12: value(1/k, b) >= (2k-3)/(2k^2-4k+1) when b > 1/k, lifted to
    // a >= 1/k (raising x only shrinks the constrained family).
    for (long long k = 2; k <= k_max; ++k) {
        if (a >= Rational(1, k) && b > Rational(1, k)) {
            emit(out, mode, Direction::Lower, Rational(2 * k - 3, 2 * k * k - 4 * k + 1), false,
                 "5-12 k=" + std::to_string(k) + sfx);
            break;
        }
    }

    // mono2: b(1 + sqrt(2a))^2 / 2 + a > 1 gives 1/2. Evaluated exactly:
    // with U = 1 - a - b/2 - ab the condition is U < 0 or 2ab^2 > U^2.
    {
        const Rational U = kOne - a - b / Rational(2) - a * b;
        if (U < kZero || Rational(2) * a * b * b > U * U)
            emit(out, mode, Direction::Lower, Rational(1, 2), false, "mono2" + sfx);
    }

    // 23weightedthm: b <= 1/2 and a > (1-b)^2/(1-2b^2) give 2/3.
    if (b <= Rational(1, 2) && a * (kOne - Rational(2) * b * b) > (kOne - b) * (kOne - b))
        emit(out, mode, Direction::Lower, Rational(2, 3), false, "23weightedthm" + sfx);

    // phi1-3: ab(1 + sqrt(2/(3a)))^2 >= (1-a-b)/(1-b) gives 1/3. With
    // V = (1-a-b)/(1-b) - ab - 2b/3 the condition is V <= 0 or
    // (8/3)ab^2 >= V^2.
    if (b < kOne) {
        const Rational V = (kOne - a - b) / (kOne - b) - a * b - Rational(2, 3) * b;
        if (V <= kZero || Rational(8, 3) * a * b * b >= V * V)
            emit(out, mode, Direction::Lower, Rational(1, 3), false, "phi1-3" + sfx);
    }
}

/// Predicates proved for the biconstrained class only; evaluated at
/// (x, y) as queried (psi is not symmetric in its arguments).
void psi_family(std::vector<CertifiedBound>& out, Mode mode, const Rational& x, const Rational& y,
                long long k_max) {
    // bisym: x + ky > 1 and kx + x/(1 - (k-1)y) >= 1 give 1/k; needs
    // (k-1)y < 1. Cleared of the fraction below.
    for (long long k = 1; k <= k_max; ++k) {
        const Rational d = kOne - Rational(k - 1) * y;
        if (d > kZero && x + Rational(k) * y > kOne && Rational(k) * x * d + x >= d) {
            emit(out, mode, Direction::Lower, Rational(1, k), false, "bisym k=" + std::to_string(k));
            break;
        }
    }

    // bisym2: x + ky > 1 and kx + y >= 1 give 1/k.
    for (long long k = 1; k <= k_max; ++k) {
        if (x + Rational(k) * y > kOne && Rational(k) * x + y >= kOne) {
            emit(out, mode, Direction::Lower, Rational(1, k), false, "bisym2 k=" + std::to_string(k));
            break;
        }
    }

    // bisym3: on the diagonal psi(x, x) = 1/k for the largest k with
    // 1/k >= x; its lower half.
    if (x == y) {
        const BigInt k = (kOne / x).floor();
        if (k >= 1 && k <= k_max)
            emit(out, mode, Direction::Lower, kOne / Rational(k), false, "bisym3 k=" + k.str());
    }

    // semibi: y >= (k-1)/k^2 and kx + y > 1 give 1/k.
    for (long long k = 1; k <= k_max; ++k) {
        if (y >= Rational(k - 1, k * k) && Rational(k) * x + y > kOne) {
            emit(out, mode, Direction::Lower, Rational(1, k), false, "semibi k=" + std::to_string(k));
            break;
        }
    }

    // 2+3: x > 1/2 gives psi(x, 1/3) >= 2/3, lifted to y >= 1/3.
    if (x > Rational(1, 2) && y >= Rational(1, 3))
        emit(out, mode, Direction::Lower, Rational(2, 3), false, "2+3");

    // 3+2: y > 1/2 gives psi(1/3, y) >= 2/3, lifted to x >= 1/3.
    if (y > Rational(1, 2) && x >= Rational(1, 3))
        emit(out, mode, Direction::Lower, Rational(2, 3), false, "3+2");

    // 4-7+2-7: max(x,y) > 1/2, x >= 1/3, x + 2y > 1 and
    // 3x + y/(1-y) > 2 give 2/3 (fraction cleared below).
    if (y < kOne && max(x, y) > Rational(1, 2) && x >= Rational(1, 3) &&
        x + Rational(2) * y > kOne &&
        Rational(3) * x * (kOne - y) + y > Rational(2) * (kOne - y))
        emit(out, mode, Direction::Lower, Rational(2, 3), false, "4-7+2-7");

    // psi13good: y > 1/5 and 3x + y/(3(1-y)) >= 1 give 1/3 (cleared).
    if (y > Rational(1, 5) && y < kOne &&
        Rational(9) * x * (kOne - y) + y >= Rational(3) * (kOne - y))
        emit(out, mode, Direction::Lower, Rational(1, 3), false, "psi13good");

    // bite: x^2(1+3y) + x(4y^2 - y - 2) + 1 - 2y + 2y^3 < 0 gives 1/2.
    {
        const Rational p = x * x * (kOne + Rational(3) * y) +
                           x * (Rational(4) * y * y - y - Rational(2)) + kOne - Rational(2) * y +
                           Rational(2) * y * y * y;
        if (p < kZero) emit(out, mode, Direction::Lower, Rational(1, 2), false, "bite");
    }
}

// ---- upper bounds: constructions ------------------------------------------

/// The same graph read as (C, B, A): part labels swap, ids, weights and
/// edges stay. Turns a biconstrained witness at (x, y) into one at (y, x).
TripartiteWeightedGraph flip_parts(const TripartiteWeightedGraph& g) {
    TripartiteWeightedGraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const auto& v = g.vertex(i);
        const Part p = v.part == Part::A ? Part::C : (v.part == Part::C ? Part::A : Part::B);
        out.add_vertex(p, v.id, v.weight);
    }
    for (const auto& [u, w] : g.edges()) out.add_edge(g.vertex(u).id, g.vertex(w).id);
    out.finalize();
    return out;
}

/// True when a certificate of class `have` bounds the function queried:
/// exact graphs are biconstrained and biconstrained graphs are
/// constrained, so stronger classes serve weaker queries.
bool serves(Mode have, Mode query) {
    if (query == Mode::Phi) return true;
    if (query == Mode::Psi) return have != Mode::Phi;
    return have == Mode::Xi;
}

/// A reusable upper-bound fact: some validated certificate of class
/// `cert_mode` at (x0, y0) with the given value. It transfers to any
/// (x, y) <= (x0, y0) coordinatewise, where the certifying graph still
/// lies in the claimed class.
struct FigureFact {
    Mode cert_mode;
    Rational x0, y0, value;
    std::string name;
};

const std::vector<FigureFact>& figure_facts() {
    static const std::vector<FigureFact> table = [] {
        std::vector<FigureFact> t;
        auto add = [&t](const WitnessCertificate& c, const std::string& name) {
            const ConstraintReport rep = verify_certificate(c);
            if (!rep.satisfied)
                throw ConsistencyError("figure fact '" + name +
                                       "' failed validation: " + rep.summary());
            t.push_back(FigureFact{c.mode, c.x, c.y, c.claimed_bound, name});
        };

        const ConstructionResult f1 = figure1_graph(false);
        add(f1.certificate, "figure1");
        {
            WitnessCertificate rev = f1.certificate;
            rev.graph = flip_parts(f1.certificate.graph);
            std::swap(rev.x, rev.y);
            rev.claimed_bound = witness_value(rev.graph);
            rev.provenance = "figure1 read as (C, B, A)";
            add(rev, "figure1 reversed");
        }

        const ConstructionResult f2 = figure2_graph();
        add(f2.certificate, "figure2");
        add(symmetrize_witness(reduce_witness(f2.certificate)), "figure2 symmetrized");

        const TriangularConstructionResult f5 = figure5_triangular_witness();
        add(f5.derived_certificate, "figure5");
        add(symmetrize_witness(reduce_witness(f5.derived_certificate)), "figure5 symmetrized");

        add(figure1_graph(true).certificate, "figure1 exactified");
        return t;
    }();
    return table;
}

struct GenResult {
    Mode mode;
    Rational claim;
    std::string provenance;
    WitnessCertificate cert;
};

/// Invokes every curve construction that might apply at (x, y), keeping
/// the validated results. Inapplicable points and untrusted fallbacks are
/// skipped silently; internal check failures propagate.
std::vector<GenResult> run_generators(Mode query, const Rational& x, const Rational& y,
                                      long long effort) {
    std::vector<GenResult> out;
    auto take = [&out](const ConstructionResult& r) {
        if (r.trusted())
            out.push_back(GenResult{r.certificate.mode, r.certificate.claimed_bound,
                                    r.certificate.provenance, r.certificate});
    };
    auto attempt = [&take](auto&& fn) {
        try {
            take(fn());
        } catch (const InapplicableError&) {
        }
    };

    // psi12curve at the largest applicable k <= effort: needs
    // x + (k+1)y <= 1 and (k+1)x + y <= 1, and the claim improves with k.
    {
        const long long k1 = floor_capped((kOne - x) / y, effort + 1) - 1;
        const long long k2 = floor_capped((kOne - y) / x, effort + 1) - 1;
        const long long k = std::min({k1, k2, effort});
        if (k >= 1 && x + Rational(k + 1) * y <= kOne && Rational(k + 1) * x + y <= kOne)
            attempt([&] { return psi12curve_witness(k, x, y); });
    }

    if (query == Mode::Phi) {
        // phi12curve at the largest applicable k <= effort: needs kx < 1,
        // ky < 1 and x/(1-kx) + y/(1-ky) <= 1, monotone in k.
        long long k = -1;
        for (long long c = 0; c <= effort; ++c) {
            const Rational dx = kOne - Rational(c) * x;
            const Rational dy = kOne - Rational(c) * y;
            if (!(dx > kZero) || !(dy > kZero) || x / dx + y / dy > kOne) break;
            k = c;
        }
        if (k >= 0) attempt([&] { return phi12curve_witness(k, x, y); });
        attempt([&] { return phi12bettercurve_witness(x, y); });
        attempt([&] { return phi13bettercurve_witness(x, y); });
        attempt([&] { return phi23curve_witness(x, y); });
    }

    attempt([&] { return psi12extracurve_witness(x, y, ExtraVariant::Forward); });
    // the reversed variant takes its arguments in figure-1 order and
    // certifies at the swapped point, i.e. at (x, y) here
    attempt([&] { return psi12extracurve_witness(y, x, ExtraVariant::Reversed); });
    attempt([&] { return psi23extra_witness(x, y, Psi23Variant::First); });
    attempt([&] { return psi23extra_witness(x, y, Psi23Variant::Second); });
    attempt([&] { return phi23extracurve_witness(x, y, Phi23Base::Third); });
    attempt([&] { return phi23extracurve_witness(x, y, Phi23Base::TwoFifths); });
    attempt([&] { return phi23reversecurve_witness(x, y, ReverseBullet::One); });
    attempt([&] { return phi23reversecurve_witness(x, y, ReverseBullet::Two); });
    return out;
}

/// Best cyclic-shift value over 1 <= k <= min(effort, 3 lcm(den x, den y)).
CertifiedBound cyclic_bound(Mode query, const Rational& x, const Rational& y, long long effort) {
    const BigInt lcm3 = lcm(x.den(), y.den()) * 3;
    long long cap = effort;
    if (lcm3 < cap) cap = to_ll(lcm3);
    if (cap < 1) cap = 1;
    Rational best;
    long long best_k = 0;
    for (long long k = 1; k <= cap; ++k) {
        const Rational v =
            (Rational((x * Rational(k)).ceil()) + Rational((y * Rational(k)).ceil()) - kOne) /
            Rational(k);
        if (best_k == 0 || v < best) {
            best = v;
            best_k = k;
        }
    }
    return CertifiedBound{Direction::Upper, best, false, "cyclic k=" + std::to_string(best_k),
                          query};
}

using MemoKey = std::tuple<int, std::string, std::string, long long>;

std::map<MemoKey, std::vector<CertifiedBound>>& upper_memo() {
    static std::map<MemoKey, std::vector<CertifiedBound>> m;
    return m;
}

std::mutex& upper_memo_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

std::vector<CertifiedBound> lower_bounds(Mode mode, const Rational& x, const Rational& y,
                                         long long k_max) {
    require_point("lower_bounds", x, y);
    if (k_max < 1) k_max = 1;

    std::vector<CertifiedBound> out;
    phi_family(out, mode, x, y, k_max, false);
    if (x != y) phi_family(out, mode, y, x, k_max, true);
    // psi-level predicates also bound xi from below (psi <= xi)
    if (mode != Mode::Phi) psi_family(out, mode, x, y, k_max);
    return out;
}

std::vector<CertifiedBound> upper_bounds(Mode mode, const Rational& x, const Rational& y,
                                         long long effort) {
    require_point("upper_bounds", x, y);
    if (effort < 1) effort = 1;

    const MemoKey key{static_cast<int>(mode), x.str(), y.str(), effort};
    {
        std::lock_guard<std::mutex> lock(upper_memo_mutex());
        auto it = upper_memo().find(key);
        if (it != upper_memo().end()) return it->second;
    }

    std::vector<CertifiedBound> out;

    for (const auto& f : figure_facts()) {
        if (serves(f.cert_mode, mode) && x <= f.x0 && y <= f.y0)
            emit(out, mode, Direction::Upper, f.value, false,
                 f.name + " at (" + f.x0.str() + ", " + f.y0.str() + ")");
    }

    for (const auto& g : run_generators(mode, x, y, effort)) {
        if (serves(g.mode, mode)) emit(out, mode, Direction::Upper, g.claim, false, g.provenance);
    }

    out.push_back(cyclic_bound(mode, x, y, effort));

    if (mode == Mode::Phi && x != y) {
        // phi is symmetric: query the mirrored point and carry the best
        // improvement back through the symmetry transform, so the bound
        // is backed by a certificate at (x, y) itself.
        Rational cur = out.front().value;
        for (const auto& b : out) cur = min(cur, b.value);
        std::optional<GenResult> best;
        for (auto& g : run_generators(mode, y, x, effort)) {
            if (g.claim < cur && (!best || g.claim < best->claim)) best = std::move(g);
        }
        if (best) {
            WitnessCertificate cert = best->cert;
            cert.mode = Mode::Phi; // every certified class implies the constrained one
            const WitnessCertificate sym = symmetrize_witness(reduce_witness(cert));
            const ConstraintReport rep = verify_certificate(sym);
            if (rep.satisfied && sym.x == x && sym.y == y)
                emit(out, mode, Direction::Upper, sym.claimed_bound, false,
                     "symmetrized from (y, x): " + best->provenance);
        }
    }

    {
        std::lock_guard<std::mutex> lock(upper_memo_mutex());
        upper_memo().emplace(key, out);
    }
    return out;
}

BoundInterval best_interval(Mode mode, const Rational& x, const Rational& y, long long effort) {
    const std::vector<CertifiedBound> lows = lower_bounds(mode, x, y, effort);
    const std::vector<CertifiedBound> highs = upper_bounds(mode, x, y, effort);
    if (lows.empty() || highs.empty())
        throw ConsistencyError("best_interval: missing bounds at (" + x.str() + ", " + y.str() +
                               ")");

    CertifiedBound best_lo = lows.front();
    for (const auto& b : lows) {
        if (b.value > best_lo.value || (b.value == best_lo.value && b.strict && !best_lo.strict))
            best_lo = b;
    }
    CertifiedBound best_hi = highs.front();
    for (const auto& b : highs) {
        if (b.value < best_hi.value || (b.value == best_hi.value && b.strict && !best_hi.strict))
            best_hi = b;
    }

    if (best_lo.value > best_hi.value ||
        (best_lo.value == best_hi.value && (best_lo.strict || best_hi.strict)))
        throw ConsistencyError("best_interval(" + std::string(mode_name(mode)) + ", " + x.str() +
                               ", " + y.str() + "): lower " + best_lo.value.str() + " (" +
                               best_lo.provenance + ") crosses upper " + best_hi.value.str() +
                               " (" + best_hi.provenance + ")");

    return BoundInterval{mode, x, y, best_lo, best_hi};
}

std::vector<UpperAnchor> figure_upper_anchors(Mode query) {
    std::vector<UpperAnchor> out;
    for (const auto& f : figure_facts()) {
        if (!serves(f.cert_mode, query)) continue;
        out.push_back(UpperAnchor{
            f.x0, f.y0,
            CertifiedBound{Direction::Upper, f.value, false,
                           f.name + " at (" + f.x0.str() + ", " + f.y0.str() + ")", query}});
    }
    return out;
}

} // namespace philab
