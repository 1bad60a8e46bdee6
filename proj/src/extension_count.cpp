#include "extmax/extension_count.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace extmax {

RootAssignment::RootAssignment(const ClassDecomposition& d, std::vector<std::vector<Vertex>> class_sets,
                               std::size_t n)
    : sets_(std::move(class_sets)) {
    if (sets_.size() != d.classes.size())
        throw std::invalid_argument("root assignment: wrong number of class sets");
    std::vector<Vertex> all;
    for (std::size_t c = 0; c < sets_.size(); ++c) {
        auto& set = sets_[c];
        if (static_cast<int>(set.size()) != d.classes[c].size)
            throw std::invalid_argument("root assignment: class set has the wrong size");
        std::sort(set.begin(), set.end());
        for (Vertex v : set) {
            if (n > 0 && v >= n) throw std::out_of_range("root assignment: vertex id out of range");
            all.push_back(v);
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("root assignment: vertex used by two roots");
}

RootAssignment RootAssignment::from_root_images(const ClassDecomposition& d, std::span<const Vertex> images,
                                                std::size_t n) {
    const auto& roots = d.pattern.roots();
    if (images.size() != roots.size()) throw std::invalid_argument("root assignment: wrong number of images");
    std::vector<std::vector<Vertex>> sets(d.classes.size());
    for (std::size_t c = 0; c < d.classes.size(); ++c) {
        for (int root : d.classes[c].roots) {
            auto pos = std::lower_bound(roots.begin(), roots.end(), root) - roots.begin();
            sets[c].push_back(images[static_cast<std::size_t>(pos)]);
        }
    }
    return RootAssignment(d, std::move(sets), n);
}

std::vector<Vertex> RootAssignment::flattened() const {
    std::vector<Vertex> out;
    for (const auto& set : sets_) out.insert(out.end(), set.begin(), set.end());
    return out;
}

std::pair<std::uint64_t, std::uint64_t> ExtensionCount::normalized() const {
    const std::uint64_t div = std::gcd(injections, norm);
    if (div == 0) return {0, 1};
    return {injections / div, norm / div};
}

namespace {

void check_assignment(const Graph& g, const ClassDecomposition& d, const RootAssignment& t) {
    if (t.class_sets().size() != d.classes.size())
        throw std::invalid_argument("root assignment does not match the decomposition");
    for (Vertex v : t.flattened()) {
        if (v >= g.n()) throw std::out_of_range("root assignment: vertex id out of range");
    }
}

// Backtracking state for one count_injections call.
class InjectionCounter {
public:
    InjectionCounter(const Graph& g, const ClassDecomposition& d, const RootAssignment& t)
        : g_(g), used_(g.n()) {
        VertexSet outside(g.n(), true);
        for (Vertex v : t.flattened()) {
            outside.erase(v);
            used_.insert(v);
        }
        pool_ = g.n() - t.flattened().size();

        std::vector<VertexSet> class_cands;
        for (const auto& set : t.class_sets()) {
            class_cands.push_back(common_neighborhood(g, set));
            class_cands.back().subtract(used_);
        }

        const RootedPattern& pat = d.pattern;
        std::vector<int> attached;
        std::vector<int> free_linked;
        for (int v : pat.expansion_vertices()) {
            const int c = d.attachment[static_cast<std::size_t>(v)];
            if (c >= 0) {
                attached.push_back(v);
            } else {
                bool linked = false;
                for (int u : pat.neighbours(v)) linked = linked || !pat.is_root(u);
                if (linked) free_linked.push_back(v);
                else ++isolated_;
            }
        }
        std::stable_sort(attached.begin(), attached.end(), [&](int a, int b) {
            return class_cands[static_cast<std::size_t>(d.attachment[static_cast<std::size_t>(a)])].count() <
                   class_cands[static_cast<std::size_t>(d.attachment[static_cast<std::size_t>(b)])].count();
        });

        std::vector<int> order = attached;
        // Free vertices: greedily take the one with most already-placed neighbours.
        while (!free_linked.empty()) {
            auto placed_nbrs = [&](int v) {
                int cnt = 0;
                for (int u : order) cnt += pat.has_edge(u, v) ? 1 : 0;
                return cnt;
            };
            auto best = std::max_element(free_linked.begin(), free_linked.end(),
                                         [&](int a, int b) { return placed_nbrs(a) < placed_nbrs(b); });
            order.push_back(*best);
            free_linked.erase(best);
        }

        for (std::size_t i = 0; i < order.size(); ++i) {
            Step step;
            const int c = d.attachment[static_cast<std::size_t>(order[i])];
            step.base = c >= 0 ? class_cands[static_cast<std::size_t>(c)] : outside;
            for (std::size_t j = 0; j < i; ++j)
                if (pat.has_edge(order[i], order[j])) step.back.push_back(j);
            steps_.push_back(std::move(step));
        }
        images_.assign(steps_.size(), 0);
        scratch_.assign(steps_.size(), VertexSet(g.n()));
    }

    std::uint64_t run() {
        unsigned __int128 total = steps_.empty() ? 1 : descend(0);
        // Isolated free vertices take any remaining vertex outside T.
        const std::size_t remaining = pool_ >= steps_.size() ? pool_ - steps_.size() : 0;
        for (int i = 0; i < isolated_; ++i) {
            const std::size_t avail = remaining >= static_cast<std::size_t>(i) ? remaining - static_cast<std::size_t>(i) : 0;
            total *= avail;
            if (total > UINT64_MAX) throw std::overflow_error("extension count overflows 64 bits");
        }
        if (total > UINT64_MAX) throw std::overflow_error("extension count overflows 64 bits");
        return static_cast<std::uint64_t>(total);
    }

private:
    struct Step {
        VertexSet base;
        std::vector<std::size_t> back;
    };

    unsigned __int128 descend(std::size_t depth) {
        VertexSet& cand = scratch_[depth];
        cand = steps_[depth].base;
        cand.subtract(used_);
        for (std::size_t j : steps_[depth].back) cand &= g_.row(images_[j]);
        if (depth + 1 == steps_.size()) return cand.count();

        unsigned __int128 total = 0;
        auto words = cand.words();
        for (std::size_t wi = 0; wi < words.size(); ++wi) {
            for (Word w = words[wi]; w != 0; w &= w - 1) {
                const auto v = static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                images_[depth] = v;
                used_.insert(v);
                total += descend(depth + 1);
                used_.erase(v);
            }
        }
        return total;
    }

    const Graph& g_;
    VertexSet used_;
    std::size_t pool_ = 0;
    int isolated_ = 0;
    std::vector<Step> steps_;
    std::vector<Vertex> images_;
    std::vector<VertexSet> scratch_;
};

}  // namespace

std::uint64_t count_injections(const Graph& g, const ClassDecomposition& d, const RootAssignment& t) {
    check_assignment(g, d, t);
    return InjectionCounter(g, d, t).run();
}

ExtensionCount extension_count(const Graph& g, const ClassDecomposition& d, const RootAssignment& t) {
    return ExtensionCount{count_injections(g, d, t), d.norm};
}

std::uint64_t brute_force_oracle(const Graph& g, const ClassDecomposition& d, const RootAssignment& t) {
    check_assignment(g, d, t);
    const auto expansion = d.pattern.expansion_vertices();
    if (expansion.size() > 7 || g.n() > 14)
        throw std::invalid_argument("brute_force_oracle: needs expansion size <= 7 and n <= 14");

    std::vector<char> blocked(g.n(), 0);
    for (Vertex v : t.flattened()) blocked[v] = 1;
    std::vector<int> slot(static_cast<std::size_t>(d.pattern.h()), -1);
    for (std::size_t i = 0; i < expansion.size(); ++i) slot[static_cast<std::size_t>(expansion[i])] = static_cast<int>(i);

    std::vector<Vertex> image(expansion.size());
    auto valid = [&]() {
        for (std::size_t i = 0; i < expansion.size(); ++i) {
            const int c = d.attachment[static_cast<std::size_t>(expansion[i])];
            if (c < 0) continue;
            for (Vertex a : t.class_sets()[static_cast<std::size_t>(c)])
                if (!g.has_edge(image[i], a)) return false;
        }
        for (const auto& [u, v] : d.pattern.edges()) {
            if (d.pattern.is_root(u) || d.pattern.is_root(v)) continue;
            if (!g.has_edge(image[static_cast<std::size_t>(slot[static_cast<std::size_t>(u)])],
                            image[static_cast<std::size_t>(slot[static_cast<std::size_t>(v)])]))
                return false;
        }
        return true;
    };

    std::uint64_t total = 0;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == expansion.size()) {
            if (valid()) ++total;
            return;
        }
        for (Vertex v = 0; v < g.n(); ++v) {
            if (blocked[v]) continue;
            blocked[v] = 1;
            image[depth] = v;
            self(self, depth + 1);
            blocked[v] = 0;
        }
    };
    rec(rec, 0);
    return total;
}

namespace {

void check_degrees(const ClassDecomposition& d, std::span<const double> degrees) {
    if (degrees.size() != d.classes.size())
        throw std::invalid_argument("conditional expectation: one degree per class required");
    for (double x : degrees) {
        if (!(x > 0.0)) throw std::invalid_argument("conditional expectation: degrees must be positive");
    }
}

double binomial_real(double top, int k) {
    if (top < k) return 0.0;
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= (top - i) / (i + 1);
    return out;
}

}  // namespace

double conditional_expectation_estimate(const ClassDecomposition& d, double n, double p,
                                        std::span<const double> degrees) {
    check_degrees(d, degrees);
    double out = std::pow(p, d.f) * std::pow(n, d.s);
    for (std::size_t c = 0; c < d.classes.size(); ++c) {
        const int gc = d.classes[c].attached;
        out *= std::pow(degrees[c], gc) / std::tgamma(gc + 1.0);
    }
    return out;
}

ConditionalBounds conditional_expectation_bounds(const ClassDecomposition& d, double n, double p,
                                                 std::span<const double> degrees) {
    check_degrees(d, degrees);
    double common = std::pow(p, d.f);
    const double base = n - d.pattern.h();
    for (int i = 1; i <= d.s; ++i) common *= base + i;
    ConditionalBounds out{common, common};
    const double shift = d.root_count() + d.g;
    for (std::size_t c = 0; c < d.classes.size(); ++c) {
        const int gc = d.classes[c].attached;
        out.lower *= binomial_real(degrees[c] - shift, gc);
        out.upper *= binomial_real(degrees[c], gc);
    }
    return out;
}

std::vector<double> class_degrees(const Graph& g, const RootAssignment& t) {
    std::vector<double> out;
    for (const auto& set : t.class_sets()) out.push_back(static_cast<double>(common_degree(g, set)));
    return out;
}

}  // namespace extmax
