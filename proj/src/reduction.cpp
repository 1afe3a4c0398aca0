#include "philab/reduction.hpp"

#include "philab/check.hpp"

#include <algorithm>

namespace philab {

namespace {

const Rational kZero(0);
const Rational kOne(1);

/// Rebuilds the certificate graph with `weighted` part weights replaced and
/// the zero-weight members of that part removed.
TripartiteWeightedGraph apply_rebalance(const TripartiteWeightedGraph& g, Part weighted,
                                        const std::vector<Rational>& new_w) {
    const auto& members = g.part_members(weighted);
    std::vector<char> drop(g.vertex_count(), 0);
    std::vector<Rational> w(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) w[i] = g.vertex(i).weight;
    for (std::size_t k = 0; k < members.size(); ++k) {
        w[members[k]] = new_w[k];
        if (new_w[k].is_zero()) drop[members[k]] = 1;
    }
    TripartiteWeightedGraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (!drop[i]) out.add_vertex(g.vertex(i).part, g.vertex(i).id, w[i]);
    for (const auto& e : g.edges())
        if (!drop[e.first] && !drop[e.second])
            out.add_edge(g.vertex(e.first).id, g.vertex(e.second).id);
    out.finalize();
    return out;
}

} // namespace

BipartiteInstance certificate_instance(const TripartiteWeightedGraph& g, Part constrained,
                                       Part weighted) {
    BipartiteInstance inst;
    const auto& cons = g.part_members(constrained);
    const auto& wtd = g.part_members(weighted);
    for (std::size_t i : cons) inst.side_A.push_back(g.vertex(i).id);
    for (std::size_t j : wtd) {
        inst.side_B.push_back(g.vertex(j).id);
        inst.w.push_back(g.vertex(j).weight);
    }
    inst.adjacency.assign(cons.size(), std::vector<bool>(wtd.size(), false));
    for (std::size_t a = 0; a < cons.size(); ++a)
        for (std::size_t j : g.neighbors_in(cons[a], weighted))
            inst.adjacency[a][g.pos_in_part(j)] = true;
    return inst;
}

BipartiteInstance complement_instance(const TripartiteWeightedGraph& g) {
    BipartiteInstance inst;
    const auto& cs = g.part_members(Part::C);
    const auto& as = g.part_members(Part::A);
    for (std::size_t i : cs) inst.side_A.push_back(g.vertex(i).id);
    for (std::size_t j : as) {
        inst.side_B.push_back(g.vertex(j).id);
        inst.w.push_back(g.vertex(j).weight);
    }
    std::vector<IndexSet> n2 = second_neighborhoods(g);
    inst.adjacency.assign(cs.size(), std::vector<bool>(as.size(), true));
    for (std::size_t c = 0; c < cs.size(); ++c)
        n2[c].for_each([&](std::size_t pos) { inst.adjacency[c][pos] = false; });
    return inst;
}

WitnessCertificate reduce_witness(const WitnessCertificate& cert) {
    {
        ConstraintReport rep = verify_certificate(cert);
        if (!rep.satisfied)
            throw InapplicableError("reduce_witness: input certificate is invalid: " +
                                    rep.summary());
    }
    WitnessCertificate cur = cert;
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto [constrained, weighted] : {std::pair{Part::A, Part::B}, {Part::B, Part::C}}) {
            Dichotomy d = lpbip_dichotomy(certificate_instance(cur.graph, constrained, weighted));
            if (d.branch != Dichotomy::Branch::Rebalanced) continue;
            WitnessCertificate cand = cur;
            cand.graph = apply_rebalance(cur.graph, weighted, *d.rebalanced);
            if (verify_certificate(cand).satisfied) {
                cur = std::move(cand);
                progress = true;
            }
        }
    }
    return cur;
}

WitnessCertificate symmetrize_witness(const WitnessCertificate& cert) {
    if (cert.mode != Mode::Phi)
        throw InapplicableError("symmetrize_witness: only phi-certificates can be permuted");
    {
        ConstraintReport rep = verify_certificate(cert);
        if (!rep.satisfied)
            throw InapplicableError("symmetrize_witness: input certificate is invalid: " +
                                    rep.summary());
    }

    WitnessCertificate cur = cert;
    std::vector<Rational> f, gdual, h;
    for (std::size_t guard = cur.graph.vertex_count() + 2; guard > 0; --guard) {
        // All three rebalancings keep a phi-certificate valid: B- and
        // C-weights only feed the constraint sums they were solved against,
        // and rebalancing A-weights over H keeps every second-neighborhood
        // total at most its old value.
        Dichotomy df = lpbip_dichotomy(certificate_instance(cur.graph, Part::A, Part::B));
        if (df.branch == Dichotomy::Branch::Rebalanced) {
            cur.graph = apply_rebalance(cur.graph, Part::B, *df.rebalanced);
        } else {
            Dichotomy dg = lpbip_dichotomy(certificate_instance(cur.graph, Part::B, Part::C));
            if (dg.branch == Dichotomy::Branch::Rebalanced) {
                cur.graph = apply_rebalance(cur.graph, Part::C, *dg.rebalanced);
            } else {
                Dichotomy dh = lpbip_dichotomy(complement_instance(cur.graph));
                if (dh.branch == Dichotomy::Branch::Rebalanced) {
                    cur.graph = apply_rebalance(cur.graph, Part::A, *dh.rebalanced);
                } else {
                    f = *df.dual;
                    gdual = *dg.dual;
                    h = *dh.dual;
                    break;
                }
            }
        }
        if (!verify_certificate(cur).satisfied)
            throw ConsistencyError("symmetrize_witness: reduction broke the certificate");
        if (guard == 1)
            throw ConsistencyError("symmetrize_witness: reduction failed to converge");
    }
    if (f.empty() && cur.graph.part_size(Part::A) != 0)
        throw ConsistencyError("symmetrize_witness: dual branch unavailable after reduction");

    // New weights: f on A (indexed by B-instance side_A = A members), g on
    // B, h on C; the graph is then read as (C, B, A) at (y, x).
    const TripartiteWeightedGraph& g = cur.graph;
    std::vector<Rational> w(g.vertex_count(), kZero);
    const auto& as = g.part_members(Part::A);
    const auto& bs = g.part_members(Part::B);
    const auto& cs = g.part_members(Part::C);
    for (std::size_t k = 0; k < as.size(); ++k) w[as[k]] = f[k];
    for (std::size_t k = 0; k < bs.size(); ++k) w[bs[k]] = gdual[k];
    for (std::size_t k = 0; k < cs.size(); ++k) w[cs[k]] = h[k];

    TripartiteWeightedGraph flipped;
    auto flip = [](Part p) { return p == Part::A ? Part::C : p == Part::C ? Part::A : Part::B; };
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        flipped.add_vertex(flip(g.vertex(i).part), g.vertex(i).id, w[i]);
    for (const auto& e : g.edges())
        flipped.add_edge(g.vertex(e.first).id, g.vertex(e.second).id);
    flipped.finalize();

    WitnessCertificate out;
    out.graph = std::move(flipped);
    out.mode = Mode::Phi;
    out.x = cert.y;
    out.y = cert.x;
    out.claimed_bound = cert.claimed_bound;
    out.strict = cert.strict;
    out.provenance = cert.provenance.empty() ? "symmetrized" : cert.provenance + "; symmetrized";
    if (!verify_certificate(out).satisfied)
        throw ConsistencyError("symmetrize_witness: output failed re-validation");
    return out;
}

WitnessCertificate nodom_reduce(const WitnessCertificate& cert, const std::vector<std::string>& X) {
    if (cert.mode != Mode::Phi)
        throw InapplicableError("nodom_reduce: stated for the plain constrained class (phi)");
    {
        ConstraintReport rep = verify_certificate(cert);
        if (!rep.satisfied)
            throw InapplicableError("nodom_reduce: input certificate is invalid");
    }
    const TripartiteWeightedGraph& g = cert.graph;
    if (!(Rational(static_cast<long long>(X.size())) * cert.claimed_bound < kOne))
        throw InapplicableError("nodom_reduce: |X| is not below 1/claim");

    // Coverage: the union over v in X of N^2_C(v) must be all of C.
    const auto& cs = g.part_members(Part::C);
    IndexSet covered(cs.size());
    for (const std::string& id : X) {
        std::size_t v = g.index_of(id);
        if (g.vertex(v).part != Part::A)
            throw InapplicableError("nodom_reduce: X must be a subset of A, got " + id);
        for (std::size_t b : g.neighbors_in(v, Part::B))
            for (std::size_t c : g.neighbors_in(b, Part::C)) covered.set(g.pos_in_part(c));
    }
    for (std::size_t k = 0; k < cs.size(); ++k)
        if (!covered.test(k))
            throw InapplicableError("nodom_reduce: second neighborhoods of X do not cover " +
                                    g.vertex(cs[k]).id);

    Dichotomy d = lpbip_dichotomy(complement_instance(g));
    if (d.branch != Dichotomy::Branch::Rebalanced)
        throw ConsistencyError("nodom_reduce: dual returned although the cover forbids it");

    // Delete exactly one zeroed A-vertex (the first, for determinism).
    const auto& as = g.part_members(Part::A);
    std::size_t zero_pos = d.rebalanced->size();
    for (std::size_t k = 0; k < d.rebalanced->size(); ++k)
        if ((*d.rebalanced)[k].is_zero()) {
            zero_pos = k;
            break;
        }
    std::vector<Rational> w(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) w[i] = g.vertex(i).weight;
    for (std::size_t k = 0; k < as.size(); ++k) w[as[k]] = (*d.rebalanced)[k];

    TripartiteWeightedGraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (i != as[zero_pos]) out.add_vertex(g.vertex(i).part, g.vertex(i).id, w[i]);
    for (const auto& e : g.edges())
        if (e.first != as[zero_pos] && e.second != as[zero_pos])
            out.add_edge(g.vertex(e.first).id, g.vertex(e.second).id);
    out.finalize();

    WitnessCertificate result = cert;
    result.graph = std::move(out);
    if (!verify_certificate(result).satisfied)
        throw ConsistencyError("nodom_reduce: output failed re-validation");
    return result;
}

} // namespace philab
