#include <gtest/gtest.h>

#include "extmax/errors.hpp"
#include "extmax/extremes.hpp"
#include "oracles.hpp"

using namespace extmax;

namespace {

ClassDecomposition decomp(const char* name, int param) { return classify_symmetric(preset_pattern(name, param)); }

std::vector<std::size_t> degrees_of(const TopNeighborhoods& t) {
    std::vector<std::size_t> out;
    for (const auto& e : t.entries) out.push_back(e.degree);
    return out;
}

}  // namespace

TEST(TopM, FiveCycle) {
    auto c5 = oracle::cycle(5);
    EXPECT_EQ(degrees_of(top_m_common_neighborhoods(c5, 1, 2)), (std::vector<std::size_t>{2, 2}));
    auto pairs = top_m_common_neighborhoods(c5, 2, 2);
    EXPECT_EQ(degrees_of(pairs), (std::vector<std::size_t>{1, 1}));
    // lexicographic tie rule among the distance-2 pairs
    EXPECT_EQ(pairs.entries[0].set, (std::vector<Vertex>{0, 2}));
    EXPECT_EQ(pairs.entries[1].set, (std::vector<Vertex>{0, 3}));
}

TEST(TopM, CompleteGraph) {
    EXPECT_EQ(degrees_of(top_m_common_neighborhoods(oracle::complete(4), 2, 1)), std::vector<std::size_t>{2});
}

TEST(TopM, Errors) {
    auto g = oracle::cycle(6);
    EXPECT_THROW(top_m_common_neighborhoods(g, 4, 1), GuardError);
    EXPECT_THROW(top_m_common_neighborhoods(g, 0, 1), GuardError);
    EXPECT_THROW(top_m_common_neighborhoods(g, 2, 0), std::invalid_argument);
    EXPECT_THROW(top_m_common_neighborhoods(g, 1, 7), std::invalid_argument);
}

TEST(TopM, GuardOverride) {
    auto g = sample_gnp(16, 0.6, 2);
    EXPECT_THROW(top_m_common_neighborhoods(g, 4, 3), GuardError);
    for (int k = 4; k <= 5; ++k) {
        auto top = top_m_common_neighborhoods(g, k, 3, 5);
        EXPECT_EQ(degrees_of(top), oracle::naive_top_degrees(g, k, 3));
    }
    EXPECT_THROW(max_extension_pruned(g, decomp("star", 4), 8), GuardError);
    EXPECT_NO_THROW(max_extension_pruned(g, decomp("star", 4), 8, 4));
}

TEST(TopMProperty, MatchesNaiveEnumeration) {
    Rng rng(8);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 6 + rng.uniform_below(35);
        auto g = sample_gnp(n, 0.2 + 0.6 * rng.uniform01(), rng());
        const int k = 1 + static_cast<int>(rng.uniform_below(3));
        const std::size_t m = 1 + rng.uniform_below(5);
        auto top = top_m_common_neighborhoods(g, k, m);
        EXPECT_EQ(degrees_of(top), oracle::naive_top_degrees(g, k, m));
        for (const auto& e : top.entries) EXPECT_EQ(oracle::naive_common_degree(g, e.set), e.degree);
        for (std::size_t j = 1; j < top.entries.size(); ++j) {
            const auto& a = top.entries[j - 1];
            const auto& b = top.entries[j];
            EXPECT_TRUE(a.degree > b.degree || (a.degree == b.degree && a.set < b.set));
        }
    }
}

TEST(MaxExact, FiveCyclePath) {
    auto d = decomp("path", 4);
    auto r = max_extension_exact(oracle::cycle(5), d);
    EXPECT_EQ(r.max_value.normalized(), (std::pair<std::uint64_t, std::uint64_t>{1, 1}));
    // smallest flattened argmax: endpoints 0 and 1 are adjacent
    EXPECT_EQ(r.argmax.flattened(), (std::vector<Vertex>{0, 1}));
}

TEST(MaxExact, EdgeOnK4) {
    auto r = max_extension_exact(oracle::complete(4), decomp("edge", 1));
    EXPECT_EQ(r.max_value.value(), 3.0);
    EXPECT_EQ(r.argmax.flattened(), std::vector<Vertex>{0});
}

TEST(MaxExact, EmptyGraph) {
    Graph empty(9);
    for (const auto& cp : oracle::small_corpus()) {
        auto r = max_extension_exact(empty, classify_symmetric(cp.pattern));
        EXPECT_EQ(r.max_value.value(), 0.0) << cp.name;
    }
}

TEST(MaxExact, GuardAndWorkers) {
    auto d = decomp("bijective_clique", 3);
    auto g = sample_gnp(30, 0.5, 1);
    EXPECT_THROW(max_extension_exact(g, d, 1, 100.0), GuardError);
    auto one = max_extension_exact(g, d, 1);
    for (std::size_t w : {2u, 4u, 8u}) {
        auto many = max_extension_exact(g, d, w);
        EXPECT_EQ(many.max_value, one.max_value);
        EXPECT_EQ(many.argmax, one.argmax);
    }
}

TEST(MaxExactProperty, MatchesPatternLevelMaximum) {
    Rng rng(99);
    const auto corpus = oracle::small_corpus();
    for (int trial = 0; trial < 60; ++trial) {
        const auto& cp = corpus[rng.uniform_below(corpus.size())];
        auto d = classify_symmetric(cp.pattern);
        const std::size_t h = static_cast<std::size_t>(cp.pattern.h());
        const std::size_t n = h + rng.uniform_below(10 - std::min<std::size_t>(h, 9));
        auto g = sample_gnp(n, 0.5, rng());
        auto r = max_extension_exact(g, d);
        EXPECT_EQ(r.max_value.injections, oracle::pattern_max_injections(g, cp.pattern)) << cp.name;
        EXPECT_EQ(r.max_value, extension_count(g, d, r.argmax)) << cp.name;
    }
}

TEST(MaxPruned, NeverExceedsExactAndFullPoolMatches) {
    Rng rng(5);
    const auto corpus = oracle::small_corpus();
    for (int trial = 0; trial < 60; ++trial) {
        const auto& cp = corpus[rng.uniform_below(corpus.size())];
        auto d = classify_symmetric(cp.pattern);
        const std::size_t n = 12;
        auto g = sample_gnp(n, 0.5, rng());
        auto exact = max_extension_exact(g, d);
        auto pruned = max_extension_pruned(g, d, 8, 5);
        EXPECT_LE(pruned.max_value, exact.max_value) << cp.name;
        int kmax = 0;
        for (const auto& grp : d.groups) kmax = std::max(kmax, grp.k);
        std::size_t full = 1;
        for (int i = 0; i < kmax; ++i) full = full * (n - static_cast<std::size_t>(i)) / static_cast<std::size_t>(i + 1);
        auto all = max_extension_pruned(g, d, full, 5);
        EXPECT_EQ(all.max_value, exact.max_value) << cp.name;
        EXPECT_EQ(all.argmax, exact.argmax) << cp.name;
    }
}

TEST(MaxPruned, MonotoneInBudget) {
    auto d = decomp("bijective_clique", 2);
    auto g = sample_gnp(40, 0.5, 12);
    ExtensionCount last{0, 1};
    for (std::size_t c : {4u, 6u, 10u, 20u, 40u}) {
        auto r = max_extension_pruned(g, d, c);
        EXPECT_GE(r.max_value, last);
        EXPECT_EQ(r.budget, c);
        last = r.max_value;
    }
}

TEST(MaxPruned, BudgetErrors) {
    auto d = decomp("bijective_clique", 3);
    auto g = sample_gnp(20, 0.5, 3);
    EXPECT_THROW(max_extension_pruned(g, d, 5), std::invalid_argument);
    EXPECT_EQ(default_pruned_budget(d), 4u * (3u + 3u));
}

TEST(JointMaxima, SingleSet) {
    auto g = sample_gnp(60, 0.5, 21);
    auto j = joint_maxima_with_overlap(g, {{1, 1}});
    std::size_t maxdeg = 0;
    for (Vertex v = 0; v < g.n(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
    ASSERT_EQ(j.tops.size(), 1u);
    EXPECT_EQ(j.tops[0].entries[0].degree, maxdeg);
    EXPECT_FALSE(j.overlap);
}

TEST(JointMaxima, FiveCycleIsDeterministic) {
    auto c5 = oracle::cycle(5);
    auto a = joint_maxima_with_overlap(c5, {{1, 2}, {2, 1}});
    EXPECT_EQ(degrees_of(a.tops[0]), (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(degrees_of(a.tops[1]), std::vector<std::size_t>{1});
    auto b = joint_maxima_with_overlap(c5, {{1, 2}, {2, 1}});
    EXPECT_EQ(a.overlap, b.overlap);
    // {0}, {1} and {0, 2} under the tie rule: 0 is shared
    EXPECT_TRUE(a.overlap);
}

TEST(JointMaxima, OverlapMatchesDefinition) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = sample_gnp(25, 0.5, rng());
        auto j = joint_maxima_with_overlap(g, {{1, 2}, {2, 2}});
        std::vector<int> seen(g.n(), 0);
        bool shared = false;
        for (const auto& t : j.tops)
            for (const auto& e : t.entries)
                for (Vertex v : e.set) shared = shared || seen[v]++ > 0;
        EXPECT_EQ(j.overlap, shared);
    }
}

TEST(JointMaxima, DuplicateSizeRejected) {
    auto g = oracle::cycle(6);
    EXPECT_THROW(joint_maxima_with_overlap(g, {{1, 1}, {1, 2}}), std::invalid_argument);
}
