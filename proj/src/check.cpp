#include "philab/check.hpp"

#include <sstream>
#include <stdexcept>

namespace philab {

namespace {

const Rational kOne(1);

void require_unit_interval(const Rational& v, const char* name) {
    if (v <= Rational(0) || v > kOne)
        throw std::domain_error(std::string(name) + " must lie in (0, 1], got " + v.str());
}

void check_side(const TripartiteWeightedGraph& g, Part from, Part to, const Rational& bound,
                const char* kind, ConstraintReport& rep) {
    for (std::size_t i : g.part_members(from)) {
        Rational got = g.neighborhood_weight(i, to);
        bool ok = got >= bound;
        if (!ok) rep.satisfied = false;
        rep.margins.push_back({g.vertex(i).id, kind, bound, got, ok});
    }
}

/// All vertices of `from` must see the same total weight in `to`; returns
/// that common value or nullopt, recording margins against the first value
/// seen.
std::optional<Rational> common_side_value(const TripartiteWeightedGraph& g, Part from, Part to,
                                          const char* kind, ConstraintReport& rep) {
    std::optional<Rational> common;
    bool uniform = true;
    for (std::size_t i : g.part_members(from)) {
        Rational got = g.neighborhood_weight(i, to);
        if (!common) common = got;
        bool ok = got == *common;
        if (!ok) uniform = false;
        rep.margins.push_back({g.vertex(i).id, kind, *common, got, ok});
    }
    if (!uniform) return std::nullopt;
    return common;
}

} // namespace

std::string ConstraintReport::summary() const {
    std::ostringstream out;
    out << mode_name(class_checked) << (satisfied ? ": satisfied" : ": violated");
    if (exact_params)
        out << " (x'=" << exact_params->first.str() << ", y'=" << exact_params->second.str()
            << ")";
    if (witness_value) out << ", witness value " << witness_value->str();
    std::size_t shown = 0;
    for (const Margin& m : margins) {
        if (m.ok) continue;
        if (shown == 4) {
            out << "; ...";
            break;
        }
        out << "; " << m.vertex << " " << m.kind << " has " << m.actual.str() << " vs "
            << m.required.str();
        ++shown;
    }
    for (const std::string& n : notes) out << "; " << n;
    return out.str();
}

ConstraintReport check_constraints(const TripartiteWeightedGraph& g, Mode mode, const Rational& x,
                                   const Rational& y) {
    require_unit_interval(x, "x");
    require_unit_interval(y, "y");
    ConstraintReport rep;
    rep.class_checked = mode;
    rep.satisfied = true;

    for (const auto& e : g.edges()) {
        Part pu = g.vertex(e.first).part;
        Part pv = g.vertex(e.second).part;
        if ((pu == Part::A && pv == Part::C) || (pu == Part::C && pv == Part::A)) {
            rep.satisfied = false;
            rep.margins.push_back({g.vertex(e.first).id + "~" + g.vertex(e.second).id,
                                   "A-C edge", Rational(0), kOne, false});
        }
    }

    switch (mode) {
    case Mode::Phi:
        check_side(g, Part::A, Part::B, x, "w(N^B) >= x", rep);
        check_side(g, Part::B, Part::C, y, "w(N^C) >= y", rep);
        break;
    case Mode::Psi:
        check_side(g, Part::A, Part::B, x, "w(N^B) >= x", rep);
        check_side(g, Part::B, Part::A, x, "w(N^A) >= x", rep);
        check_side(g, Part::B, Part::C, y, "w(N^C) >= y", rep);
        check_side(g, Part::C, Part::B, y, "w(N^B) >= y", rep);
        break;
    case Mode::Xi: {
        auto xp1 = common_side_value(g, Part::A, Part::B, "w(N^B) = x'", rep);
        auto xp2 = common_side_value(g, Part::B, Part::A, "w(N^A) = x'", rep);
        auto yp1 = common_side_value(g, Part::B, Part::C, "w(N^C) = y'", rep);
        auto yp2 = common_side_value(g, Part::C, Part::B, "w(N^B) = y'", rep);
        if (!xp1 || !xp2 || *xp1 != *xp2) {
            rep.satisfied = false;
            rep.notes.push_back("no common exact x'");
        } else if (!yp1 || !yp2 || *yp1 != *yp2) {
            rep.exact_params = {{*xp1, Rational(0)}};
            rep.satisfied = false;
            rep.notes.push_back("no common exact y'");
        } else {
            rep.exact_params = {{*xp1, *yp1}};
            if (*xp1 < x) {
                rep.satisfied = false;
                rep.notes.push_back("x' = " + xp1->str() + " < x");
            }
            if (*yp1 < y) {
                rep.satisfied = false;
                rep.notes.push_back("y' = " + yp1->str() + " < y");
            }
        }
        break;
    }
    }

    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (g.vertex(i).weight.is_zero()) {
            rep.notes.push_back("zero-weight vertex " + g.vertex(i).id);
            break;
        }
    return rep;
}

std::vector<IndexSet> second_neighborhoods(const TripartiteWeightedGraph& g) {
    const auto& as = g.part_members(Part::A);
    const auto& bs = g.part_members(Part::B);
    std::vector<IndexSet> b_mask(bs.size(), IndexSet(as.size()));
    for (std::size_t bi = 0; bi < bs.size(); ++bi)
        for (std::size_t a : g.neighbors_in(bs[bi], Part::A)) b_mask[bi].set(g.pos_in_part(a));
    std::vector<IndexSet> out;
    out.reserve(g.part_members(Part::C).size());
    for (std::size_t c : g.part_members(Part::C)) {
        IndexSet acc(as.size());
        for (std::size_t b : g.neighbors_in(c, Part::B)) acc.unite(b_mask[g.pos_in_part(b)]);
        out.push_back(std::move(acc));
    }
    return out;
}

Rational second_neighborhood_weight(const TripartiteWeightedGraph& g, const std::string& v_id) {
    std::size_t v = g.index_of(v_id);
    if (g.vertex(v).part != Part::C)
        throw StructuralError("second neighborhood is defined for C-vertices, got " + v_id);
    const auto& as = g.part_members(Part::A);
    IndexSet acc(as.size());
    for (std::size_t b : g.neighbors_in(v, Part::B))
        for (std::size_t a : g.neighbors_in(b, Part::A)) acc.set(g.pos_in_part(a));
    Rational total(0);
    acc.for_each([&](std::size_t pos) { total += g.vertex(as[pos]).weight; });
    return total;
}

Rational witness_value(const TripartiteWeightedGraph& g) {
    const auto& as = g.part_members(Part::A);
    std::vector<IndexSet> n2 = second_neighborhoods(g);
    Rational best(0);
    for (const IndexSet& s : n2) {
        Rational total(0);
        s.for_each([&](std::size_t pos) { total += g.vertex(as[pos]).weight; });
        if (total > best) best = total;
    }
    return best;
}

ConstraintReport verify_certificate(const WitnessCertificate& cert) {
    ConstraintReport rep = check_constraints(cert.graph, cert.mode, cert.x, cert.y);
    Rational value = witness_value(cert.graph);
    rep.witness_value = value;
    bool bound_ok = cert.strict ? value < cert.claimed_bound : value <= cert.claimed_bound;
    if (!bound_ok) {
        rep.satisfied = false;
        rep.notes.push_back("witness value " + value.str() + (cert.strict ? " not < " : " > ") +
                            "claimed bound " + cert.claimed_bound.str());
    }
    return rep;
}

BigInt minimal_blowup_order(const TripartiteWeightedGraph& g) {
    BigInt n(1);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) n = lcm(n, g.vertex(i).weight.den());
    return n;
}

TripartiteWeightedGraph blow_up(const TripartiteWeightedGraph& g, const BigInt& N) {
    if (N <= 0) throw std::domain_error("blow-up order must be positive");
    std::vector<BigInt> copies(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        Rational scaled = g.vertex(i).weight * Rational(N);
        if (!scaled.is_integer())
            throw std::domain_error("blow-up order " + Rational(N).str() +
                                    " does not clear the weight of " + g.vertex(i).id);
        copies[i] = scaled.num();
    }
    TripartiteWeightedGraph out;
    auto clone_id = [](const std::string& id, const BigInt& j) {
        return id + "@" + Rational(j).str();
    };
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        for (BigInt j = 0; j < copies[i]; ++j)
            out.add_vertex(g.vertex(i).part, clone_id(g.vertex(i).id, j));
    for (const auto& e : g.edges()) {
        const std::string& uid = g.vertex(e.first).id;
        const std::string& vid = g.vertex(e.second).id;
        for (BigInt ju = 0; ju < copies[e.first]; ++ju)
            for (BigInt jv = 0; jv < copies[e.second]; ++jv)
                out.add_edge(clone_id(uid, ju), clone_id(vid, jv));
    }
    out.finalize();
    return out;
}

} // namespace philab
