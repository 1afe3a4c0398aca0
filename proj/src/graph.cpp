#include "philab/graph.hpp"

#include <algorithm>
#include <set>

namespace philab {

void TripartiteWeightedGraph::add_vertex(Part part, const std::string& id,
                                         const Rational& weight) {
    if (finalized_) throw StructuralError("add_vertex after finalize()");
    if (id.empty()) throw StructuralError("empty vertex id");
    if (index_.count(id)) throw StructuralError("duplicate vertex id: " + id);
    index_[id] = verts_.size();
    verts_.push_back(Vertex{id, part, weight});
}

void TripartiteWeightedGraph::add_edge(const std::string& u, const std::string& v) {
    if (finalized_) throw StructuralError("add_edge after finalize()");
    auto iu = index_.find(u), iv = index_.find(v);
    if (iu == index_.end()) throw StructuralError("edge endpoint not declared: " + u);
    if (iv == index_.end()) throw StructuralError("edge endpoint not declared: " + v);
    if (iu->second == iv->second) throw StructuralError("self-loop at " + u);
    if (verts_[iu->second].part == verts_[iv->second].part)
        throw StructuralError("edge inside part " +
                              std::string(part_name(verts_[iu->second].part)) + ": " + u +
                              " -- " + v);
    edges_.emplace_back(iu->second, iv->second);
}

void TripartiteWeightedGraph::finalize() {
    if (finalized_) return;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& [u, v] : edges_) {
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            throw StructuralError("duplicate edge: " + verts_[u].id + " -- " + verts_[v].id);
    }
    pos_.resize(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        auto& m = members_[static_cast<int>(verts_[i].part)];
        pos_[i] = m.size();
        m.push_back(i);
    }
    for (int p = 0; p < 3; ++p)
        if (members_[p].empty())
            throw StructuralError(std::string("empty part ") + part_name(static_cast<Part>(p)));

    weighted_ = true;
    for (auto& v : verts_)
        if (v.weight.is_negative()) weighted_ = false;
    if (!weighted_) {
        for (auto& v : verts_) {
            auto n = members_[static_cast<int>(v.part)].size();
            v.weight = Rational(1, static_cast<long long>(n));
        }
    } else {
        for (int p = 0; p < 3; ++p) {
            Rational sum(0);
            for (auto i : members_[p]) sum += verts_[i].weight;
            if (sum != Rational(1))
                throw StructuralError(std::string("part ") + part_name(static_cast<Part>(p)) +
                                      " weights sum to " + sum.str() + ", expected 1");
        }
    }

    adj_.assign(verts_.size(), {});
    for (auto& [u, v] : edges_) {
        adj_[u][static_cast<int>(verts_[v].part)].push_back(v);
        adj_[v][static_cast<int>(verts_[u].part)].push_back(u);
    }
    for (auto& a : adj_)
        for (auto& lst : a) std::sort(lst.begin(), lst.end());
    finalized_ = true;
}

std::size_t TripartiteWeightedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw StructuralError("unknown vertex id: " + id);
    return it->second;
}

Rational TripartiteWeightedGraph::neighborhood_weight(std::size_t i, Part p) const {
    require_finalized();
    Rational sum(0);
    for (auto j : adj_[i][static_cast<int>(p)]) sum += verts_[j].weight;
    return sum;
}

bool TripartiteWeightedGraph::has_edge(const std::string& u, const std::string& v) const {
    require_finalized();
    auto iu = index_.find(u), iv = index_.find(v);
    if (iu == index_.end() || iv == index_.end()) return false;
    const auto& lst = adj_[iu->second][static_cast<int>(verts_[iv->second].part)];
    return std::binary_search(lst.begin(), lst.end(), iv->second);
}

bool TripartiteWeightedGraph::same_as(const TripartiteWeightedGraph& other) const {
    if (vertex_count() != other.vertex_count() || edges_.size() != other.edges_.size())
        return false;
    for (const auto& v : verts_) {
        if (!other.has_vertex(v.id)) return false;
        const auto& w = other.verts_[other.index_of(v.id)];
        if (w.part != v.part || w.weight != v.weight) return false;
    }
    for (auto& [u, v] : edges_)
        if (!other.has_edge(verts_[u].id, verts_[v].id)) return false;
    return true;
}

} // namespace philab
