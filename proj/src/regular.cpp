#include "philab/regular.hpp"

#include "philab/errors.hpp"
#include "philab/lp.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace philab {
namespace {

const Rational kZero(0);
const Rational kOne(1);

/// Incremental rational row-echelon form used to prune dependent prefixes
/// during matrix enumeration.
class Echelon {
public:
    /// Tries to add a row; returns false (unchanged) when it is linearly
    /// dependent on the rows already present.
    bool add(std::vector<Rational> row) {
        reduce(row);
        std::size_t lead = row.size();
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_zero()) {
                lead = j;
                break;
            }
        }
        if (lead == row.size()) return false;
        rows_.push_back(std::move(row));
        leads_.push_back(lead);
        return true;
    }

    void pop() {
        rows_.pop_back();
        leads_.pop_back();
    }

private:
    void reduce(std::vector<Rational>& row) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational& p = row[leads_[r]];
            if (p.is_zero()) continue;
            const Rational f = p / rows_[r][leads_[r]];
            for (std::size_t j = leads_[r]; j < row.size(); ++j)
                row[j] -= f * rows_[r][j];
        }
    }

    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> leads_;
};

std::vector<Rational> mask_row(std::uint32_t mask, int n) {
    std::vector<Rational> row(n);
    for (int j = 0; j < n; ++j) row[j] = ((mask >> j) & 1u) ? kOne : kZero;
    return row;
}

/// Both weight vectors of an x-regular assignment on adjacency `masks`,
/// or nullopt: solves M w_b = x 1 and M^T w_a = x 1 and checks that both
/// are strictly positive with sum exactly 1.
std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> regular_weights(
    const std::vector<std::uint32_t>& masks, int n, const Rational& x) {
    std::vector<std::vector<Rational>> m(n), mt(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        m[i] = mask_row(masks[i], n);
        for (int j = 0; j < n; ++j) mt[j][i] = m[i][j];
    }
    const std::vector<Rational> rhs(n, x);

    auto wb = solve_linear_system(m, rhs);
    if (!wb) return std::nullopt;
    Rational sum;
    for (const auto& w : *wb) {
        if (!(w > kZero)) return std::nullopt;
        sum += w;
    }
    if (sum != kOne) return std::nullopt;

    auto wa = solve_linear_system(mt, rhs);
    if (!wa) return std::nullopt;
    sum = Rational(0);
    for (const auto& w : *wa) {
        if (!(w > kZero)) return std::nullopt;
        sum += w;
    }
    if (sum != kOne) return std::nullopt;

    return std::make_pair(std::move(*wa), std::move(*wb));
}

BipartiteWeightedGraph graph_from(const std::vector<std::uint32_t>& masks, int n,
                                  std::vector<Rational> wa, std::vector<Rational> wb) {
    BipartiteWeightedGraph g;
    for (int i = 0; i < n; ++i) {
        g.ids_a.push_back("a" + std::to_string(i + 1));
        g.ids_b.push_back("b" + std::to_string(i + 1));
    }
    g.w_a = std::move(wa);
    g.w_b = std::move(wb);
    g.adj.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.adj[i][j] = ((masks[i] >> j) & 1u) != 0;
    return g;
}

} // namespace

Rational BipartiteWeightedGraph::min_weight() const {
    if (w_a.empty() && w_b.empty()) return Rational(0);
    Rational m = w_a.empty() ? w_b.front() : w_a.front();
    for (const auto& w : w_a) m = min(m, w);
    for (const auto& w : w_b) m = min(m, w);
    return m;
}

bool is_x_regular(const BipartiteWeightedGraph& g, const Rational& x) {
    const std::size_t n = g.ids_a.size();
    if (n == 0 || g.ids_b.size() != n || g.w_a.size() != n || g.w_b.size() != n) return false;
    if (g.adj.size() != n) return false;

    Rational sa, sb;
    for (const auto& w : g.w_a) {
        if (!(w > kZero)) return false;
        sa += w;
    }
    for (const auto& w : g.w_b) {
        if (!(w > kZero)) return false;
        sb += w;
    }
    if (sa != kOne || sb != kOne) return false;

    for (std::size_t i = 0; i < n; ++i) {
        if (g.adj[i].size() != n) return false;
        Rational row;
        for (std::size_t j = 0; j < n; ++j)
            if (g.adj[i][j]) row += g.w_b[j];
        if (row != x) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rational col;
        for (std::size_t i = 0; i < n; ++i)
            if (g.adj[i][j]) col += g.w_a[i];
        if (col != x) return false;
    }

    // nonsingular 0/1 adjacency
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = g.adj[i][j] ? kOne : kZero;
    return solve_linear_system(std::move(m), std::vector<Rational>(n, kOne)).has_value();
}

BipartiteWeightedGraph figure7_regular_graph() {
    const Rational f(1, 5), t(2, 5);
    std::vector<std::uint32_t> masks = {
        0b0011, // a1 ~ b1, b2
        0b0101, // a2 ~ b1, b3
        0b0110, // a3 ~ b2, b3
        0b1000, // a4 ~ b4
    };
    return graph_from(masks, 4, {f, f, f, t}, {f, f, f, t});
}

RegularSearchResult min_regular_order(const Rational& x, int n_max) {
    if (!(x > kZero) || x > kOne) throw std::invalid_argument("min_regular_order: x not in (0, 1]");
    if (n_max < 1) throw std::invalid_argument("min_regular_order: n_max < 1");

    RegularSearchResult res;
    res.x = x;

    for (int n = 1; n <= n_max; ++n) {
        std::optional<BipartiteWeightedGraph> best;

        std::vector<std::uint32_t> masks;
        Echelon ech;
        const std::uint32_t top = (n >= 31) ? 0x7fffffffu : ((1u << n) - 1);

        // rows strictly increasing as bitmasks: covers every matrix with
        // pairwise-distinct rows up to row permutation, and equal rows are
        // singular anyway
        auto rec = [&](auto&& self, std::uint32_t from, int depth) -> void {
            if (depth == n) {
                if (auto w = regular_weights(masks, n, x)) {
                    BipartiteWeightedGraph g =
                        graph_from(masks, n, std::move(w->first), std::move(w->second));
                    if (!best || g.min_weight() > best->min_weight()) best = std::move(g);
                }
                return;
            }
            for (std::uint32_t r = from; r <= top - (n - 1 - depth); ++r) {
                if (!ech.add(mask_row(r, n))) continue;
                masks.push_back(r);
                self(self, r + 1, depth + 1);
                masks.pop_back();
                ech.pop();
            }
        };
        rec(rec, 1, 0);

        if (best) {
            res.order_found = n;
            res.graph = std::move(best);
            res.exhausted_up_to = n;
            return res;
        }
    }
    res.exhausted_up_to = n_max;
    return res;
}

std::vector<std::pair<std::string, Rational>> regular_implies_peace(
    const Rational& x, const RegularSearchResult& result) {
    if (!result.order_found || !result.graph)
        throw InapplicableError("regular_implies_peace: no order was found");

    const int n = *result.order_found;
    const Rational inv_n(1, n);
    const Rational minw = result.graph->min_weight();
    const std::string xs = x.str();

    std::vector<std::pair<std::string, Rational>> out;
    out.emplace_back("phi(" + xs + ", y) = " + xs + " for all y <= " + inv_n.str(), inv_n);
    out.emplace_back("psi(" + xs + ", y) = " + xs + " for all y <= " + minw.str(), minw);
    return out;
}

bool hadamard_bound_check(int n, const Rational& x) {
    if (n < 1) throw std::invalid_argument("hadamard_bound_check: n < 1");
    BigInt power(1);
    for (int i = 0; i < n + 1; ++i) power *= (n + 1);
    return x.den() <= isqrt(power);
}

} // namespace philab
