#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace extmax {

class PatternError : public std::runtime_error {
public:
    enum class Kind {
        Malformed,
        VertexOutOfRange,
        DuplicateEdge,
        SelfLoop,
        DuplicateRoot,
        NoRoots,
        NoExpansion,
        UnknownPreset,
        ParamTooSmall,
        NotFullyGrounded,
        NotSymmetric,
    };

    PatternError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

using PatternEdge = std::pair<int, int>;

/// A rooted graph (R, H). Vertices are 0..h-1; the non-root vertices form the
/// expansion set. Roots are kept sorted and edges are stored as sorted (u < v)
/// pairs in ascending order.
class RootedPattern {
public:
    /// Validates and normalizes. Throws PatternError.
    RootedPattern(int h, std::vector<int> roots, std::vector<PatternEdge> edges);

    int h() const noexcept { return h_; }
    const std::vector<int>& roots() const noexcept { return roots_; }
    const std::vector<PatternEdge>& edges() const noexcept { return edges_; }

    bool is_root(int v) const noexcept { return is_root_[static_cast<std::size_t>(v)] != 0; }
    bool has_edge(int u, int v) const noexcept;
    std::vector<int> neighbours(int v) const;
    std::vector<int> expansion_vertices() const;

    /// Applies a vertex relabeling: vertex v becomes perm[v].
    RootedPattern relabeled(const std::vector<int>& perm) const;

    friend bool operator==(const RootedPattern&, const RootedPattern&) = default;

private:
    int h_;
    std::vector<int> roots_;
    std::vector<PatternEdge> edges_;
    std::vector<char> is_root_;
};

/// Parses `{"h": int, "roots": [...], "edges": [[u,v], ...]}`.
RootedPattern parse_pattern(std::string_view text);

/// Compact JSON with sorted roots and edges.
std::string serialize_pattern(const RootedPattern& pattern);

/// Presets: "edge", "star" (k rays, leaves rooted), "clique_root" (s-clique,
/// one root), "bijective_clique" (m roots matched into an m-clique) and
/// "path" (path with l edges, endpoints rooted; l >= 4).
RootedPattern preset_pattern(std::string_view name, int param);

/// True iff every root has at least one non-root neighbour.
bool validate_fully_grounded(const RootedPattern& pattern);

/// One class of roots together with the number of expansion vertices that
/// are joined to all of it.
struct RootClass {
    int size = 0;                // k_i
    int attached = 0;            // g_{i,j}
    std::vector<int> roots;      // sorted pattern vertex ids
    std::size_t group = 0;       // i (0-based)
    std::size_t index_in_group = 0;  // j (0-based)

    friend bool operator==(const RootClass&, const RootClass&) = default;
};

/// All root classes of one size k_i, with their g_{i,1} >= ... >= g_{i,m_i}.
struct ClassGroup {
    int k = 0;
    std::vector<int> g;

    int m() const noexcept { return static_cast<int>(g.size()); }
    int g_sum() const noexcept;

    friend bool operator==(const ClassGroup&, const ClassGroup&) = default;
};

/// Symmetric classification of a fully grounded rooted pattern.
///
/// `classes` is the flat canonical order: groups by ascending k, then
/// descending g within a group, ties broken by smallest contained root id.
/// `attachment[v]` is the flat class index of an attached expansion vertex,
/// kFree for an expansion vertex with no root neighbour, and kRoot for roots.
struct ClassDecomposition {
    static constexpr int kFree = -1;
    static constexpr int kRoot = -2;

    RootedPattern pattern;
    std::vector<ClassGroup> groups;
    std::vector<RootClass> classes;
    std::vector<int> attachment;
    int g = 0;
    int s = 0;
    int f = 0;
    std::uint64_t norm = 1;  // product of g_{i,j}!

    std::size_t r() const noexcept { return groups.size(); }
    int root_count() const noexcept { return static_cast<int>(pattern.roots().size()); }
    int expansion_size() const noexcept { return pattern.h() - root_count(); }

    /// Compares every numeric field (W(H), g-matrix, g, s, f, norm, h, |R|).
    bool same_parameters(const ClassDecomposition& other) const;
};

/// Throws PatternError{NotFullyGrounded} or PatternError{NotSymmetric}.
ClassDecomposition classify_symmetric(const RootedPattern& pattern);

/// Resolves a CLI pattern reference: a path to a JSON file, or a preset
/// written as `name` or `name:param` (param defaults to 1).
RootedPattern resolve_pattern_ref(std::string_view ref);

}  // namespace extmax
