#include "extmax/extremes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "extmax/errors.hpp"

namespace extmax {

namespace {

bool ranks_before(const NeighborhoodEntry& a, const NeighborhoodEntry& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.set < b.set;
}

double binomial_count(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double out = 1.0;
    for (std::size_t i = 0; i < k; ++i) out = out * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return std::round(out);
}

class TopCollector {
public:
    explicit TopCollector(std::size_t m) : m_(m) {}

    bool full() const { return entries_.size() == m_; }
    std::size_t worst() const { return entries_.back().degree; }

    // Sets arrive in lexicographic order, so an equal degree never displaces
    // an entry already held.
    bool dominated(std::size_t degree) const { return full() && degree <= worst(); }

    void offer(std::vector<Vertex> set, std::size_t degree) {
        if (dominated(degree)) return;
        NeighborhoodEntry e{std::move(set), degree};
        auto pos = std::upper_bound(entries_.begin(), entries_.end(), e, ranks_before);
        entries_.insert(pos, std::move(e));
        if (entries_.size() > m_) entries_.pop_back();
    }

    std::vector<NeighborhoodEntry> take() { return std::move(entries_); }

private:
    std::size_t m_;
    std::vector<NeighborhoodEntry> entries_;
};

}  // namespace

TopNeighborhoods top_m_common_neighborhoods(const Graph& g, int k, std::size_t m, int max_set_size) {
    if (k < 1 || k > max_set_size) {
        throw GuardError("top_m_common_neighborhoods: k must be in [1, " + std::to_string(max_set_size) + "]");
    }
    if (m == 0) throw std::invalid_argument("top_m_common_neighborhoods: m must be positive");
    const std::size_t n = g.n();
    if (n <= static_cast<std::size_t>(k)) throw std::invalid_argument("top_m_common_neighborhoods: need n > k");
    if (static_cast<double>(m) > binomial_count(n, static_cast<std::size_t>(k)))
        throw std::invalid_argument("top_m_common_neighborhoods: m exceeds the number of k-sets");

    TopCollector top(m);
    const auto depth_k = static_cast<std::size_t>(k);
    const std::size_t stride = g.words_per_row();
    // prefix_bits[d] holds the common neighbourhood of the first d + 1 chosen vertices
    std::vector<std::vector<Word>> prefix_bits(depth_k, std::vector<Word>(stride));
    std::vector<Vertex> chosen;
    chosen.reserve(depth_k);

    auto rec = [&](auto&& self, Vertex start) -> void {
        const std::size_t depth = chosen.size();
        if (depth + 1 == depth_k) {
            for (Vertex w = start; w < n; ++w) {
                const std::size_t deg =
                    depth == 0 ? g.degree(w) : row_intersection_count(prefix_bits[depth - 1], g.row(w));
                if (top.dominated(deg)) continue;
                chosen.push_back(w);
                top.offer(chosen, deg);
                chosen.pop_back();
            }
            return;
        }
        for (Vertex v = start; v < n; ++v) {
            const auto rv = g.row(v);
            auto& bits = prefix_bits[depth];
            std::size_t deg = 0;
            for (std::size_t i = 0; i < stride; ++i) {
                bits[i] = depth == 0 ? rv[i] : prefix_bits[depth - 1][i] & rv[i];
                deg += static_cast<std::size_t>(std::popcount(bits[i]));
            }
            if (top.dominated(deg)) continue;
            chosen.push_back(v);
            self(self, v + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return TopNeighborhoods{k, top.take()};
}

double exact_search_size(std::size_t n, const ClassDecomposition& d) {
    double total = 1.0;
    std::size_t used = 0;
    for (const auto& c : d.classes) {
        const auto k = static_cast<std::size_t>(c.size);
        if (used + k > n) return 0.0;
        total *= binomial_count(n - used, k);
        used += k;
    }
    return total;
}

namespace {

struct Candidate {
    ExtensionCount value;
    std::vector<Vertex> flat;
    std::vector<std::vector<Vertex>> sets;
};

bool improves(const ExtensionCount& value, const std::vector<Vertex>& flat, const std::optional<Candidate>& best) {
    if (!best) return true;
    if (value != best->value) return value > best->value;
    return flat < best->flat;
}

std::vector<std::vector<Vertex>> combinations(std::size_t n, std::size_t k, const std::vector<char>& blocked) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, Vertex start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = start; v < n; ++v) {
            if (blocked[v]) continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Enumerates classes 1.. for a fixed choice of class 0, in lexicographic order.
void search_rest(const Graph& g, const ClassDecomposition& d, std::vector<std::vector<Vertex>>& sets,
                 std::vector<char>& blocked, std::size_t cls, std::optional<Candidate>& best) {
    if (cls == d.classes.size()) {
        RootAssignment t(d, sets);
        ExtensionCount value = extension_count(g, d, t);
        auto flat = t.flattened();
        if (improves(value, flat, best)) best = Candidate{value, std::move(flat), sets};
        return;
    }
    const auto k = static_cast<std::size_t>(d.classes[cls].size);
    std::vector<Vertex>& cur = sets[cls];
    cur.clear();
    auto rec = [&](auto&& self, Vertex start) -> void {
        if (cur.size() == k) {
            search_rest(g, d, sets, blocked, cls + 1, best);
            return;
        }
        for (Vertex v = start; v < g.n(); ++v) {
            if (blocked[v]) continue;
            blocked[v] = 1;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
            blocked[v] = 0;
        }
    };
    rec(rec, 0);
}

}  // namespace

MaxExtensionResult max_extension_exact(const Graph& g, const ClassDecomposition& d, std::size_t workers,
                                       double guard) {
    const double size = exact_search_size(g.n(), d);
    if (size == 0.0) throw std::invalid_argument("max_extension_exact: graph too small for the pattern");
    if (size > guard) {
        throw GuardError("max_extension_exact: " + std::to_string(size) + " assignments exceed the guard of " +
                         std::to_string(guard));
    }

    const std::vector<char> none(g.n(), 0);
    const auto first = combinations(g.n(), static_cast<std::size_t>(d.classes[0].size), none);
    workers = std::clamp<std::size_t>(workers, 1, first.size());

    std::vector<std::optional<Candidate>> local(workers);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            std::vector<std::vector<Vertex>> sets(d.classes.size());
            std::vector<char> blocked(g.n(), 0);
            for (std::size_t i = next++; i < first.size(); i = next++) {
                sets[0] = first[i];
                for (Vertex v : first[i]) blocked[v] = 1;
                search_rest(g, d, sets, blocked, 1, local[w]);
                for (Vertex v : first[i]) blocked[v] = 0;
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::optional<Candidate> best;
    for (auto& cand : local) {
        if (cand && improves(cand->value, cand->flat, best)) best = std::move(cand);
    }
    return MaxExtensionResult{best->value, RootAssignment(d, best->sets), SearchMode::exact, 0};
}

std::size_t default_pruned_budget(const ClassDecomposition& d) {
    std::size_t classes = d.classes.size();
    return 4 * (classes + static_cast<std::size_t>(d.root_count()));
}

MaxExtensionResult max_extension_pruned(const Graph& g, const ClassDecomposition& d, std::size_t budget,
                                        int max_set_size) {
    std::size_t needed = 0;
    for (const auto& grp : d.groups)
        needed = std::max(needed, static_cast<std::size_t>(grp.m() + d.root_count()));
    if (budget < needed) {
        throw std::invalid_argument("max_extension_pruned: budget must be at least " + std::to_string(needed));
    }

    std::vector<std::vector<NeighborhoodEntry>> pools;
    for (const auto& grp : d.groups) {
        const double available = binomial_count(g.n(), static_cast<std::size_t>(grp.k));
        const auto c = static_cast<std::size_t>(std::min(static_cast<double>(budget), available));
        pools.push_back(top_m_common_neighborhoods(g, grp.k, c, max_set_size).entries);
    }

    std::optional<Candidate> best;
    std::vector<std::vector<Vertex>> sets(d.classes.size());
    std::vector<char> blocked(g.n(), 0);
    auto rec = [&](auto&& self, std::size_t cls) -> void {
        if (cls == d.classes.size()) {
            RootAssignment t(d, sets);
            ExtensionCount value = extension_count(g, d, t);
            auto flat = t.flattened();
            if (improves(value, flat, best)) best = Candidate{value, std::move(flat), sets};
            return;
        }
        for (const auto& entry : pools[d.classes[cls].group]) {
            if (std::any_of(entry.set.begin(), entry.set.end(), [&](Vertex v) { return blocked[v] != 0; }))
                continue;
            for (Vertex v : entry.set) blocked[v] = 1;
            sets[cls] = entry.set;
            self(self, cls + 1);
            for (Vertex v : entry.set) blocked[v] = 0;
        }
    };
    rec(rec, 0);
    if (!best) {
        throw GuardError("max_extension_pruned: no disjoint family among the top-" + std::to_string(budget) +
                         " candidates; raise the budget");
    }
    return MaxExtensionResult{best->value, RootAssignment(d, best->sets), SearchMode::pruned, budget};
}

JointMaxima joint_maxima_with_overlap(const Graph& g, const std::vector<std::pair<int, std::size_t>>& spec,
                                      int max_set_size) {
    std::set<int> seen;
    for (const auto& [k, m] : spec) {
        if (!seen.insert(k).second) throw std::invalid_argument("joint maxima: duplicate set size k");
    }
    JointMaxima out;
    std::vector<char> hit(g.n(), 0);
    for (const auto& [k, m] : spec) {
        out.tops.push_back(top_m_common_neighborhoods(g, k, m, max_set_size));
        for (const auto& e : out.tops.back().entries) {
            for (Vertex v : e.set) {
                if (hit[v]) out.overlap = true;
                hit[v] = 1;
            }
        }
    }
    return out;
}

}  // namespace extmax
