#pragma once

#include "philab/rational.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace philab {

enum class Part : int { A = 0, B = 1, C = 2 };

inline const char* part_name(Part p) {
    switch (p) {
        case Part::A: return "A";
        case Part::B: return "B";
        default: return "C";
    }
}

struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense bit set over vertex indices of one part; used for second
/// neighborhoods and isomorphism keys.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t n) : bits_((n + 63) / 64, 0), size_(n) {}

    void set(std::size_t i) { bits_[i >> 6] |= (std::uint64_t(1) << (i & 63)); }
    bool test(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
    void unite(const IndexSet& o) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] |= o.bits_[w];
    }
    std::size_t size() const { return size_; }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                f(w * 64 + bit);
                word &= word - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> bits_;
    std::size_t size_ = 0;
};

/// Weighted tripartite graph. Parts are disjoint and nonempty after
/// finalize(); edges join distinct parts only (A-C edges are legal at this
/// level: triangular witnesses use them, the constraint checkers reject
/// them). Per-part weights sum to exactly 1; an unweighted graph carries
/// the uniform weight 1/|part| on every vertex and is flagged as such.
class TripartiteWeightedGraph {
public:
    struct Vertex {
        std::string id;
        Part part;
        Rational weight;
    };

    void add_vertex(Part part, const std::string& id, const Rational& weight);
    void add_vertex(Part part, const std::string& id) { add_vertex(part, id, Rational(-1)); }
    void add_edge(const std::string& u, const std::string& v);
    bool has_vertex(const std::string& id) const { return index_.count(id) != 0; }

    /// Validates structure and weight sums, builds adjacency. Graphs with
    /// any weight < 0 are treated as unweighted and get uniform weights.
    void finalize();

    bool finalized() const { return finalized_; }
    bool weighted() const { return weighted_; }

    std::size_t vertex_count() const { return verts_.size(); }
    const Vertex& vertex(std::size_t i) const { return verts_[i]; }
    std::size_t index_of(const std::string& id) const;

    const std::vector<std::size_t>& part_members(Part p) const {
        return members_[static_cast<int>(p)];
    }
    std::size_t part_size(Part p) const { return members_[static_cast<int>(p)].size(); }

    /// Neighbors of vertex i lying in part p, as graph-wide indices.
    const std::vector<std::size_t>& neighbors_in(std::size_t i, Part p) const {
        return adj_[i][static_cast<int>(p)];
    }

    /// Position of vertex i inside its own part (0-based).
    std::size_t pos_in_part(std::size_t i) const { return pos_[i]; }

    Rational neighborhood_weight(std::size_t i, Part p) const;

    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    bool has_edge(const std::string& u, const std::string& v) const;

    /// Structural + weight equality on ids (order-insensitive).
    bool same_as(const TripartiteWeightedGraph& other) const;

private:
    void require_finalized() const {
        if (!finalized_) throw StructuralError("graph used before finalize()");
    }

    std::vector<Vertex> verts_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::array<std::vector<std::size_t>, 3> members_;
    std::vector<std::array<std::vector<std::size_t>, 3>> adj_;
    std::vector<std::size_t> pos_;
    bool finalized_ = false;
    bool weighted_ = true;
};

} // namespace philab
