#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "extmax/graph.hpp"
#include "extmax/rng.hpp"
#include "oracles.hpp"

using namespace extmax;

TEST(SampleGnp, Deterministic) {
    auto a = sample_gnp(10, 0.5, 42);
    auto b = sample_gnp(10, 0.5, 42);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.provenance().seed, 42u);
    EXPECT_FALSE(a.provenance().external);
    EXPECT_FALSE(a == sample_gnp(10, 0.5, 43));
}

TEST(SampleGnp, SingleVertex) {
    auto g = sample_gnp(1, 0.5, 7);
    EXPECT_EQ(g.n(), 1u);
    EXPECT_EQ(g.edge_count(), 0u);
}

TEST(SampleGnp, RejectsBadArguments) {
    EXPECT_THROW(sample_gnp(0, 0.5, 1), std::invalid_argument);
    EXPECT_THROW(sample_gnp(5, 0.0, 1), std::invalid_argument);
    EXPECT_THROW(sample_gnp(5, 1.0, 1), std::invalid_argument);
}

TEST(SampleGnp, DrawOrderIsRowMajor) {
    // Independent replay of the documented draw order.
    const std::size_t n = 37;
    const double p = 0.3;
    const std::uint64_t seed = 99;
    auto g = sample_gnp(n, p, seed);
    Rng rng(seed);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) EXPECT_EQ(g.has_edge(u, v), rng.uniform01() < p);
}

TEST(SampleGnp, SymmetricWithoutLoops) {
    auto g = sample_gnp(70, 0.4, 5);
    std::size_t deg_sum = 0;
    for (Vertex u = 0; u < g.n(); ++u) {
        EXPECT_FALSE(g.has_edge(u, u));
        for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(g.has_edge(u, v), g.has_edge(v, u));
        deg_sum += g.degree(u);
    }
    EXPECT_EQ(deg_sum, 2 * g.edge_count());
}

TEST(SampleGnp, EdgeMarginal) {
    // Edge frequency of the single pair of G(2, 0.3) over 1e5 seeds. The
    // standard error is about 0.0014, so 0.005 is more than 3.4 sigma.
    const int seeds = 100000;
    int hits = 0;
    for (int s = 0; s < seeds; ++s) hits += sample_gnp(2, 0.3, mix_seed(11, static_cast<std::uint64_t>(s))).edge_count();
    EXPECT_NEAR(static_cast<double>(hits) / seeds, 0.3, 0.005);
}

TEST(SampleGnp, EdgeCountConcentration) {
    // |E| ~ Bin(C(n,2), 1/2); a 4-sigma band fails with probability ~6e-5 per
    // seed, so all but a handful of 1000 seeds must land inside.
    const std::size_t n = 2000;
    const double pairs = n * (n - 1) / 2.0;
    const double band = 4.0 * std::sqrt(pairs * 0.25);
    const int seeds = 1000;
    int inside = 0;
    for (int s = 0; s < seeds; ++s) {
        auto g = sample_gnp(n, 0.5, mix_seed(2000, static_cast<std::uint64_t>(s)));
        inside += std::fabs(static_cast<double>(g.edge_count()) - 0.5 * pairs) <= band ? 1 : 0;
    }
    EXPECT_GE(inside, 990);
}

TEST(CommonNeighborhood, CompleteGraph) {
    auto k4 = oracle::complete(4);
    std::vector<Vertex> u{0, 1};
    EXPECT_EQ(common_neighborhood(k4, u).to_vector(), (std::vector<Vertex>{2, 3}));
    EXPECT_EQ(common_degree(k4, u), 2u);
}

TEST(CommonNeighborhood, FiveCycle) {
    auto c5 = oracle::cycle(5);
    std::vector<Vertex> far{0, 2};
    std::vector<Vertex> near{0, 1};
    EXPECT_EQ(common_neighborhood(c5, far).to_vector(), std::vector<Vertex>{1});
    EXPECT_TRUE(common_neighborhood(c5, near).to_vector().empty());
    EXPECT_EQ(common_degree(c5, far), 1u);
    EXPECT_EQ(common_degree(c5, near), 0u);
}

TEST(CommonNeighborhood, SingletonIsDegree) {
    auto g = sample_gnp(130, 0.5, 3);
    for (Vertex u = 0; u < g.n(); ++u) {
        std::vector<Vertex> one{u};
        EXPECT_EQ(common_degree(g, one), g.degree(u));
    }
}

TEST(CommonNeighborhood, MatchesNaiveScanAndShrinks) {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 5 + rng.uniform_below(140);
        auto g = sample_gnp(n, 0.2 + 0.6 * rng.uniform01(), rng());
        auto set = oracle::random_root_images(n, 1 + rng.uniform_below(4), rng);
        const auto deg = common_degree(g, set);
        EXPECT_EQ(deg, oracle::naive_common_degree(g, set));
        // adding a vertex never increases the common degree
        if (set.size() < n) {
            auto bigger = set;
            for (Vertex v = 0; v < n; ++v)
                if (std::find(set.begin(), set.end(), v) == set.end()) {
                    bigger.push_back(v);
                    break;
                }
            EXPECT_LE(common_degree(g, bigger), deg);
        }
    }
}

TEST(CommonNeighborhood, RejectsEmptySet) {
    auto g = oracle::cycle(5);
    EXPECT_THROW(common_neighborhood(g, std::vector<Vertex>{}), std::invalid_argument);
}

TEST(EdgeList, RoundTrip) {
    auto g = sample_gnp(40, 0.3, 8);
    std::stringstream ss;
    write_edge_list(ss, g);
    auto back = read_edge_list(ss);
    EXPECT_EQ(back, g);
    EXPECT_TRUE(back.provenance().external);
}

TEST(EdgeList, RejectsBadInput) {
    std::stringstream missing("0 1\n");
    EXPECT_THROW(read_edge_list(missing), std::invalid_argument);
    std::stringstream loop("n 3\n1 1\n");
    EXPECT_THROW(read_edge_list(loop), std::invalid_argument);
}

TEST(Rng, SplitSeedsDiffer) {
    EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
    EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(rng.uniform_below(7), 7u);
    }
}
