#include "philab/triangular.hpp"

namespace philab {

namespace {

const Rational kOne(1);

void bullet(const TripartiteWeightedGraph& g, Part from, Part to, const Rational& thresh,
            const char* kind, ConstraintReport& rep) {
    for (std::size_t i : g.part_members(from)) {
        Rational got = g.neighborhood_weight(i, to);
        bool ok = got >= thresh;
        if (!ok) rep.satisfied = false;
        rep.margins.push_back({g.vertex(i).id, kind, thresh, got, ok});
    }
}

} // namespace

ConstraintReport check_triangular_witness(const TriangularWitness& tw) {
    const TripartiteWeightedGraph& g = tw.graph;
    ConstraintReport rep;
    rep.class_checked = (tw.star_x && tw.star_y) ? Mode::Psi : Mode::Phi;
    rep.satisfied = true;
    {
        std::string triple = "(" + tw.x.str() + (tw.star_x ? "*" : "") + ", " + tw.y.str() +
                             (tw.star_y ? "*" : "") + ", " + tw.z.str() + (tw.star_z ? "*" : "") +
                             ")";
        rep.notes.push_back("triangular triple " + triple);
    }

    // Any triangle has one vertex per part; scan through the B-vertex.
    for (std::size_t b : g.part_members(Part::B)) {
        for (std::size_t a : g.neighbors_in(b, Part::A))
            for (std::size_t c : g.neighbors_in(b, Part::C))
                if (g.has_edge(g.vertex(a).id, g.vertex(c).id)) {
                    rep.satisfied = false;
                    rep.margins.push_back({g.vertex(a).id + "~" + g.vertex(b).id + "~" +
                                               g.vertex(c).id,
                                           "triangle", Rational(0), kOne, false});
                }
    }

    bullet(g, Part::A, Part::B, tw.x, "w(N^B) >= x", rep);
    bullet(g, Part::B, Part::C, tw.y, "w(N^C) >= y", rep);
    bullet(g, Part::C, Part::A, tw.z, "w(N^A) >= z", rep);
    if (tw.star_x) bullet(g, Part::B, Part::A, tw.x, "w(N^A) >= x (*)", rep);
    if (tw.star_y) bullet(g, Part::C, Part::B, tw.y, "w(N^B) >= y (*)", rep);
    if (tw.star_z) bullet(g, Part::A, Part::C, tw.z, "w(N^C) >= z (*)", rep);
    return rep;
}

TriangularWitness witness_to_triangular(const WitnessCertificate& cert) {
    if (cert.mode == Mode::Xi)
        throw InapplicableError("witness_to_triangular: exact-mode certificates not supported");
    if (!(cert.claimed_bound < kOne))
        throw InapplicableError("witness_to_triangular: claim must be below 1 so that z > 0");

    const TripartiteWeightedGraph& g = cert.graph;
    TripartiteWeightedGraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        out.add_vertex(g.vertex(i).part, g.vertex(i).id, g.vertex(i).weight);
    for (const auto& e : g.edges()) out.add_edge(g.vertex(e.first).id, g.vertex(e.second).id);

    const auto& as = g.part_members(Part::A);
    const auto& cs = g.part_members(Part::C);
    std::vector<IndexSet> n2 = second_neighborhoods(g);
    for (std::size_t ci = 0; ci < cs.size(); ++ci)
        for (std::size_t ai = 0; ai < as.size(); ++ai)
            if (!n2[ci].test(ai)) out.add_edge(g.vertex(as[ai]).id, g.vertex(cs[ci]).id);
    out.finalize();

    TriangularWitness tw;
    tw.graph = std::move(out);
    tw.x = cert.x;
    tw.y = cert.y;
    tw.z = kOne - cert.claimed_bound;
    tw.star_x = tw.star_y = (cert.mode == Mode::Psi);
    return tw;
}

WitnessCertificate triangular_to_witness(const TriangularWitness& tw) {
    ConstraintReport rep = check_triangular_witness(tw);
    if (!rep.satisfied)
        throw InapplicableError("triangular_to_witness: witness does not verify: " +
                                rep.summary());
    if (tw.star_x != tw.star_y)
        throw InapplicableError(
            "triangular_to_witness: asterisk pattern unsupported (need none, or both x* and y*)");

    const TripartiteWeightedGraph& g = tw.graph;
    TripartiteWeightedGraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        out.add_vertex(g.vertex(i).part, g.vertex(i).id, g.vertex(i).weight);
    for (const auto& e : g.edges()) {
        Part pu = g.vertex(e.first).part;
        Part pv = g.vertex(e.second).part;
        bool ac = (pu == Part::A && pv == Part::C) || (pu == Part::C && pv == Part::A);
        if (!ac) out.add_edge(g.vertex(e.first).id, g.vertex(e.second).id);
    }
    out.finalize();

    WitnessCertificate cert;
    cert.graph = std::move(out);
    cert.mode = (tw.star_x && tw.star_y) ? Mode::Psi : Mode::Phi;
    cert.x = tw.x;
    cert.y = tw.y;
    cert.claimed_bound = kOne - tw.z;
    cert.strict = false;
    cert.provenance = "triangular";
    return cert;
}

} // namespace philab
