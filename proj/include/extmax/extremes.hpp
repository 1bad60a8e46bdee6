#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "extmax/extension_count.hpp"
#include "extmax/graph.hpp"
#include "extmax/pattern.hpp"

namespace extmax {

struct NeighborhoodEntry {
    std::vector<Vertex> set;  // sorted, size k
    std::size_t degree = 0;

    friend bool operator==(const NeighborhoodEntry&, const NeighborhoodEntry&) = default;
};

/// Top-m k-sets by common degree. Entries are ordered by degree descending,
/// then by lexicographically smallest set.
struct TopNeighborhoods {
    int k = 0;
    std::vector<NeighborhoodEntry> entries;
};

/// Default cost guard on the set size k of common-neighbourhood searches.
inline constexpr int kDefaultMaxSetSize = 3;

/// Exact top-m over all C(n, k) sets, found by depth-first set extension. A
/// prefix whose common degree is already <= the current m-th best cannot
/// contribute and is skipped. Throws GuardError unless 1 <= k <= max_set_size.
TopNeighborhoods top_m_common_neighborhoods(const Graph& g, int k, std::size_t m,
                                            int max_set_size = kDefaultMaxSetSize);

enum class SearchMode { exact, pruned };

struct MaxExtensionResult {
    ExtensionCount max_value;
    RootAssignment argmax;
    SearchMode mode = SearchMode::exact;
    std::size_t budget = 0;  // candidate-pool size c in pruned mode
};

inline constexpr double kDefaultSearchGuard = 1e8;

/// Number of root assignments max_extension_exact would visit.
double exact_search_size(std::size_t n, const ClassDecomposition& d);

/// Exhaustive maximum of X(T) over every assignment of pairwise-disjoint class
/// sets. Ties go to the lexicographically smallest flattened assignment.
/// Throws GuardError if exact_search_size exceeds `guard`.
MaxExtensionResult max_extension_exact(const Graph& g, const ClassDecomposition& d,
                                       std::size_t workers = 1, double guard = kDefaultSearchGuard);

/// Default candidate budget 4 * (sum of m_i + |R|).
std::size_t default_pruned_budget(const ClassDecomposition& d);

/// Evaluates X(T) on every family of pairwise-disjoint sets drawn from the
/// top-c common neighbourhoods of each class size; same tie rule as exact.
/// Throws std::invalid_argument if c < max_i (m_i + |R|), GuardError if no
/// disjoint family exists in the pools.
MaxExtensionResult max_extension_pruned(const Graph& g, const ClassDecomposition& d, std::size_t budget,
                                        int max_set_size = kDefaultMaxSetSize);

struct JointMaxima {
    /// values[i][j] = j-th largest common degree over k_i-sets.
    std::vector<TopNeighborhoods> tops;
    bool overlap = false;
};

/// Top-m_i neighbourhoods for each (k_i, m_i); `overlap` is set iff two of
/// the maximizing sets share a vertex. k_i must be distinct.
JointMaxima joint_maxima_with_overlap(const Graph& g, const std::vector<std::pair<int, std::size_t>>& spec,
                                      int max_set_size = kDefaultMaxSetSize);

}  // namespace extmax
