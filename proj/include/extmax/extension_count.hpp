#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "extmax/graph.hpp"
#include "extmax/pattern.hpp"

namespace extmax {

/// Images of the root classes: class_sets[c] is the vertex set playing the
/// flat class c of a ClassDecomposition. Each set is kept sorted.
class RootAssignment {
public:
    RootAssignment() = default;

    /// Validates sizes against `d`, pairwise disjointness and range (when n > 0).
    RootAssignment(const ClassDecomposition& d, std::vector<std::vector<Vertex>> class_sets,
                   std::size_t n = 0);

    /// Builds the assignment induced by mapping pattern root r to images[i],
    /// where r = d.pattern.roots()[i].
    static RootAssignment from_root_images(const ClassDecomposition& d, std::span<const Vertex> images,
                                           std::size_t n = 0);

    const std::vector<std::vector<Vertex>>& class_sets() const noexcept { return sets_; }
    std::vector<Vertex> flattened() const;

    friend bool operator==(const RootAssignment&, const RootAssignment&) = default;

private:
    std::vector<std::vector<Vertex>> sets_;
};

/// X(T) = injections / norm, kept as an exact integer pair.
struct ExtensionCount {
    std::uint64_t injections = 0;
    std::uint64_t norm = 1;

    /// Reduced numerator/denominator of injections / norm.
    std::pair<std::uint64_t, std::uint64_t> normalized() const;
    bool is_integer() const { return injections % norm == 0; }
    double value() const { return static_cast<double>(injections) / static_cast<double>(norm); }

    friend bool operator==(const ExtensionCount& a, const ExtensionCount& b) {
        return static_cast<unsigned __int128>(a.injections) * b.norm ==
               static_cast<unsigned __int128>(b.injections) * a.norm;
    }
    friend std::strong_ordering operator<=>(const ExtensionCount& a, const ExtensionCount& b) {
        return static_cast<unsigned __int128>(a.injections) * b.norm <=>
               static_cast<unsigned __int128>(b.injections) * a.norm;
    }
};

/// Number of injective maps of the expansion set into V(g) \ T such that every
/// attached expansion vertex lands in the common neighbourhood of its class
/// set and every expansion-internal edge of H lands on an edge of g.
/// Non-induced: absent pattern edges impose nothing.
std::uint64_t count_injections(const Graph& g, const ClassDecomposition& d, const RootAssignment& t);

ExtensionCount extension_count(const Graph& g, const ClassDecomposition& d, const RootAssignment& t);

/// Reference counter: tries every ordered tuple of distinct vertices outside
/// T. Requires expansion size <= 7 and n <= 14.
std::uint64_t brute_force_oracle(const Graph& g, const ClassDecomposition& d, const RootAssignment& t);

/// p^f * n^s * prod_c deg_c^{g_c} / g_c!  with degrees in flat class order.
double conditional_expectation_estimate(const ClassDecomposition& d, double n, double p,
                                        std::span<const double> degrees);

struct ConditionalBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// lower = p^f (n-h+s)...(n-h+1) prod C(deg - |R| - g, g_c)
/// upper = p^f (n-h+s)...(n-h+1) prod C(deg, g_c)
/// A binomial with a negative top argument is taken as 0.
ConditionalBounds conditional_expectation_bounds(const ClassDecomposition& d, double n, double p,
                                                 std::span<const double> degrees);

/// Common degree of each class set of `t`, in flat class order.
std::vector<double> class_degrees(const Graph& g, const RootAssignment& t);

}  // namespace extmax
