#include "extmax/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "extmax/rng.hpp"

namespace extmax {

VertexSet::VertexSet(std::size_t n, bool full) : n_(n), words_((n + 63) / 64, full ? ~Word{0} : 0) {
    if (full && (n & 63) != 0) words_.back() = (Word{1} << (n & 63)) - 1;
}

std::size_t VertexSet::count() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::vector<Vertex> VertexSet::to_vector() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (Word w = words_[i]; w != 0; w &= w - 1)
            out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
    }
    return out;
}

VertexSet& VertexSet::operator&=(std::span<const Word> other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
    return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

Graph::Graph(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {
    if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
}

std::size_t Graph::degree(Vertex v) const noexcept {
    std::size_t total = 0;
    for (Word w : row(v)) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::size_t Graph::edge_count() const noexcept {
    std::size_t total = 0;
    for (Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total / 2;
}

void Graph::add_edge(Vertex u, Vertex v) {
    if (u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    mutable_row(u)[v >> 6] |= Word{1} << (v & 63);
    mutable_row(v)[u >> 6] |= Word{1} << (u & 63);
}

Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_gnp: n must be positive");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_gnp: p must lie in (0, 1)");
    Graph g(n);
    Rng rng(seed);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (rng.uniform01() < p) g.add_edge(u, v);
        }
    }
    g.set_provenance({p, seed, false});
    return g;
}

namespace {

void check_u_set(const Graph& g, std::span<const Vertex> u_set) {
    if (u_set.empty()) throw std::invalid_argument("common_neighborhood: empty vertex set");
    for (Vertex u : u_set) {
        if (u >= g.n()) throw std::out_of_range("common_neighborhood: vertex id out of range");
    }
}

}  // namespace

VertexSet common_neighborhood(const Graph& g, std::span<const Vertex> u_set) {
    check_u_set(g, u_set);
    VertexSet out(g.n(), true);
    for (Vertex u : u_set) out &= g.row(u);
    return out;
}

std::size_t common_degree(const Graph& g, std::span<const Vertex> u_set) {
    check_u_set(g, u_set);
    if (u_set.size() == 1) return g.degree(u_set[0]);
    if (u_set.size() == 2) return row_intersection_count(g.row(u_set[0]), g.row(u_set[1]));
    return common_neighborhood(g, u_set).count();
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "n " << g.n() << '\n';
    for (Vertex u = 0; u < g.n(); ++u) {
        for (Vertex v = u + 1; v < g.n(); ++v)
            if (g.has_edge(u, v)) out << u << ' ' << v << '\n';
    }
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream header(line);
        std::string tag;
        if (!(header >> tag >> n) || tag != "n") throw std::invalid_argument("edge list: expected 'n <count>' header");
        break;
    }
    if (n == 0) throw std::invalid_argument("edge list: missing or zero vertex count");
    Graph g(n);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream pair(line);
        long long u = -1;
        long long v = -1;
        if (!(pair >> u >> v) || u < 0 || v < 0) throw std::invalid_argument("edge list: bad line '" + line + "'");
        if (static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            throw std::out_of_range("edge list: vertex id out of range");
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return g;
}

}  // namespace extmax
