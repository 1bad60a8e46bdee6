#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace extmax {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

/// Fixed-size bitset over the vertex set of one graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n, bool full = false);

    std::size_t universe() const noexcept { return n_; }
    std::span<Word> words() noexcept { return words_; }
    std::span<const Word> words() const noexcept { return words_; }

    bool contains(Vertex v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }
    void insert(Vertex v) noexcept { words_[v >> 6] |= Word{1} << (v & 63); }
    void erase(Vertex v) noexcept { words_[v >> 6] &= ~(Word{1} << (v & 63)); }
    std::size_t count() const noexcept;
    std::vector<Vertex> to_vector() const;

    VertexSet& operator&=(std::span<const Word> other) noexcept;
    VertexSet& subtract(const VertexSet& other) noexcept;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Word> words_;
};

/// Where a graph came from. `external` graphs were read from an edge list.
struct GraphProvenance {
    double p = 0.0;
    std::uint64_t seed = 0;
    bool external = true;
};

/// Simple undirected graph stored as a symmetric adjacency bit matrix.
class Graph {
public:
    explicit Graph(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return stride_; }
    const GraphProvenance& provenance() const noexcept { return provenance_; }
    void set_provenance(const GraphProvenance& prov) noexcept { provenance_ = prov; }

    std::span<const Word> row(Vertex v) const noexcept {
        return {bits_.data() + static_cast<std::size_t>(v) * stride_, stride_};
    }
    bool has_edge(Vertex u, Vertex v) const noexcept { return (row(u)[v >> 6] >> (v & 63)) & 1U; }
    std::size_t degree(Vertex v) const noexcept;
    std::size_t edge_count() const noexcept;

    void add_edge(Vertex u, Vertex v);

    friend bool operator==(const Graph& a, const Graph& b) noexcept {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    std::span<Word> mutable_row(Vertex v) noexcept {
        return {bits_.data() + static_cast<std::size_t>(v) * stride_, stride_};
    }

    std::size_t n_;
    std::size_t stride_;
    std::vector<Word> bits_;
    GraphProvenance provenance_;
};

/// G(n, p): pairs (u, v), u < v, are visited in row-major order and each is an
/// edge iff the next uniform01() draw of Rng(seed) is below p.
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed);

/// Common neighbours of all of `u_set`, as a bitset. Never contains members of
/// `u_set` (there are no self-loops).
VertexSet common_neighborhood(const Graph& g, std::span<const Vertex> u_set);

/// |common_neighborhood(g, u_set)|.
std::size_t common_degree(const Graph& g, std::span<const Vertex> u_set);

/// Popcount of the intersection of two rows.
inline std::size_t row_intersection_count(std::span<const Word> a, std::span<const Word> b) noexcept {
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

/// Edge-list text: a header line `n <count>`, then one `u v` pair per line.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace extmax
