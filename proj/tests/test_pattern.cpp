#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "extmax/pattern.hpp"
#include "extmax/rng.hpp"

using namespace extmax;
using K = PatternError::Kind;

namespace {

K error_kind(auto&& fn) {
    try {
        fn();
    } catch (const PatternError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected PatternError";
    return K::Malformed;
}

// u1 sees both roots, u2 sees only the second.
RootedPattern overlapping_roots_pattern() {
    // roots v1=0, v2=1; non-roots u1=2, u2=3
    return RootedPattern(4, {0, 1}, {{2, 3}, {0, 2}, {1, 2}, {1, 3}});
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(ParsePattern, EdgePattern) {
    auto p = parse_pattern(R"({"h":2,"roots":[0],"edges":[[0,1]]})");
    EXPECT_EQ(p.h(), 2);
    EXPECT_EQ(p.roots(), std::vector<int>{0});
    ASSERT_EQ(p.edges().size(), 1u);
    EXPECT_EQ(p, preset_pattern("edge", 1));
}

TEST(ParsePattern, FiveRayStar) {
    auto p = parse_pattern(R"({"h":6,"roots":[0,1,2,3,4],"edges":[[0,5],[1,5],[2,5],[3,5],[4,5]]})");
    EXPECT_EQ(p.roots().size(), 5u);
    EXPECT_EQ(p.expansion_vertices(), std::vector<int>{5});
    EXPECT_EQ(p, preset_pattern("star", 5));
}

TEST(ParsePattern, RejectsMissingExpansion) {
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":2,"roots":[0,1],"edges":[[0,1]]})"); }), K::NoExpansion);
}

TEST(ParsePattern, ErrorKinds) {
    EXPECT_EQ(error_kind([] { parse_pattern("{not json"); }), K::Malformed);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":2,"roots":[0]})"); }), K::Malformed);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":2,"roots":[0],"edges":[[0]]})"); }), K::Malformed);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":2,"roots":[0],"edges":[[0,2]]})"); }), K::VertexOutOfRange);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":2,"roots":[5],"edges":[]})"); }), K::VertexOutOfRange);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":3,"roots":[0],"edges":[[0,1],[1,0]]})"); }), K::DuplicateEdge);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":3,"roots":[0],"edges":[[1,1]]})"); }), K::SelfLoop);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":3,"roots":[0,0],"edges":[]})"); }), K::DuplicateRoot);
    EXPECT_EQ(error_kind([] { parse_pattern(R"({"h":3,"roots":[],"edges":[]})"); }), K::NoRoots);
}

TEST(ParsePattern, NormalizesOrder) {
    auto p = parse_pattern(R"({"h":4,"roots":[3,0],"edges":[[2,1],[3,1],[0,2]]})");
    EXPECT_EQ(p.roots(), (std::vector<int>{0, 3}));
    EXPECT_EQ(p.edges(), (std::vector<PatternEdge>{{0, 2}, {1, 2}, {1, 3}}));
    EXPECT_EQ(serialize_pattern(p), R"({"edges":[[0,2],[1,2],[1,3]],"h":4,"roots":[0,3]})");
}

TEST(PresetPattern, BijectiveCliqueThree) {
    auto p = preset_pattern("bijective_clique", 3);
    EXPECT_EQ(p.h(), 6);
    EXPECT_EQ(p.roots().size(), 3u);
    const auto exp = p.expansion_vertices();
    ASSERT_EQ(exp.size(), 3u);
    for (std::size_t i = 0; i < exp.size(); ++i)
        for (std::size_t j = i + 1; j < exp.size(); ++j) EXPECT_TRUE(p.has_edge(exp[i], exp[j]));
    // perfect matching: each root has exactly one neighbour, all distinct
    std::vector<int> matched;
    for (int r : p.roots()) {
        auto nb = p.neighbours(r);
        ASSERT_EQ(nb.size(), 1u);
        EXPECT_FALSE(p.is_root(nb[0]));
        matched.push_back(nb[0]);
    }
    std::sort(matched.begin(), matched.end());
    EXPECT_EQ(matched, exp);
    EXPECT_EQ(p.edges().size(), 6u);
}

TEST(PresetPattern, PathFive) {
    auto p = preset_pattern("path", 5);
    EXPECT_EQ(p.h(), 6);
    EXPECT_EQ(p.edges().size(), 5u);
    ASSERT_EQ(p.roots().size(), 2u);
    // both roots are endpoints: degree 1; internal vertices have degree 2
    for (int v = 0; v < p.h(); ++v) EXPECT_EQ(p.neighbours(v).size(), p.is_root(v) ? 1u : 2u);
}

TEST(PresetPattern, Edge) {
    auto p = preset_pattern("edge", 1);
    EXPECT_EQ(p.h(), 2);
    EXPECT_EQ(p.roots().size(), 1u);
    EXPECT_EQ(p.edges().size(), 1u);
}

TEST(PresetPattern, Errors) {
    EXPECT_EQ(error_kind([] { preset_pattern("hexagon", 3); }), K::UnknownPreset);
    EXPECT_EQ(error_kind([] { preset_pattern("star", 0); }), K::ParamTooSmall);
    EXPECT_EQ(error_kind([] { preset_pattern("clique_root", 1); }), K::ParamTooSmall);
    EXPECT_EQ(error_kind([] { preset_pattern("bijective_clique", 1); }), K::ParamTooSmall);
    EXPECT_EQ(error_kind([] { preset_pattern("path", 3); }), K::ParamTooSmall);
}

TEST(FullyGrounded, Examples) {
    EXPECT_TRUE(validate_fully_grounded(preset_pattern("edge", 1)));
    // edge pattern plus an isolated root
    EXPECT_FALSE(validate_fully_grounded(RootedPattern(3, {0, 2}, {{0, 1}})));
    EXPECT_TRUE(validate_fully_grounded(overlapping_roots_pattern()));
}

TEST(Classify, FiveRayStar) {
    auto d = classify_symmetric(preset_pattern("star", 5));
    ASSERT_EQ(d.r(), 1u);
    EXPECT_EQ(d.groups[0].k, 5);
    EXPECT_EQ(d.groups[0].g, std::vector<int>{1});
    EXPECT_EQ(d.g, 1);
    EXPECT_EQ(d.s, 0);
    EXPECT_EQ(d.f, 0);
    EXPECT_EQ(d.norm, 1u);
}

TEST(Classify, BijectiveCliqueThree) {
    auto d = classify_symmetric(preset_pattern("bijective_clique", 3));
    ASSERT_EQ(d.r(), 1u);
    EXPECT_EQ(d.groups[0].k, 1);
    EXPECT_EQ(d.groups[0].g, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(d.g, 3);
    EXPECT_EQ(d.s, 0);
    EXPECT_EQ(d.f, 3);
    EXPECT_EQ(d.norm, 1u);
}

TEST(Classify, PathFive) {
    auto d = classify_symmetric(preset_pattern("path", 5));
    ASSERT_EQ(d.r(), 1u);
    EXPECT_EQ(d.groups[0].k, 1);
    EXPECT_EQ(d.groups[0].g, (std::vector<int>{1, 1}));
    EXPECT_EQ(d.g, 2);
    EXPECT_EQ(d.s, 2);
    EXPECT_EQ(d.f, 3);
    EXPECT_EQ(d.norm, 1u);
}

TEST(Classify, OverlappingRootSetsAreNotSymmetric) {
    EXPECT_EQ(error_kind([] { classify_symmetric(overlapping_roots_pattern()); }), K::NotSymmetric);
}

TEST(Classify, UngroundedRoot) {
    EXPECT_EQ(error_kind([] { classify_symmetric(RootedPattern(3, {0, 2}, {{0, 1}})); }), K::NotFullyGrounded);
}

TEST(Classify, MixedClassSizes) {
    // roots {0,1} share attached vertices 4 and 5; root 2 has vertex 6; root 3
    // has vertex 7; vertex 8 is free and joined to 4 and 6.
    RootedPattern p(9, {0, 1, 2, 3},
                    {{0, 4}, {1, 4}, {0, 5}, {1, 5}, {2, 6}, {3, 7}, {4, 8}, {6, 8}, {4, 5}});
    auto d = classify_symmetric(p);
    ASSERT_EQ(d.r(), 2u);
    EXPECT_EQ(d.groups[0].k, 1);
    EXPECT_EQ(d.groups[0].g, (std::vector<int>{1, 1}));
    EXPECT_EQ(d.groups[1].k, 2);
    EXPECT_EQ(d.groups[1].g, std::vector<int>{2});
    EXPECT_EQ(d.g, 4);
    EXPECT_EQ(d.s, 1);
    EXPECT_EQ(d.f, 3);
    EXPECT_EQ(d.norm, 2u);
    EXPECT_EQ(d.attachment[8], ClassDecomposition::kFree);
    EXPECT_EQ(d.attachment[0], ClassDecomposition::kRoot);
    // flat order: size-1 classes (ties on g broken by smallest root), then {0,1}
    ASSERT_EQ(d.classes.size(), 3u);
    EXPECT_EQ(d.classes[0].roots, std::vector<int>{2});
    EXPECT_EQ(d.classes[1].roots, std::vector<int>{3});
    EXPECT_EQ(d.classes[2].roots, (std::vector<int>{0, 1}));
}

TEST(Classify, GValuesDescendWithinGroup) {
    // root 0 has two attached vertices, root 1 has one
    RootedPattern p(5, {0, 1}, {{0, 3}, {0, 4}, {1, 2}});
    auto d = classify_symmetric(p);
    EXPECT_EQ(d.groups[0].g, (std::vector<int>{2, 1}));
    EXPECT_EQ(d.classes[0].roots, std::vector<int>{0});
    EXPECT_EQ(d.norm, 2u);
}

TEST(ClassifyProperty, PresetClosedForms) {
    for (int k = 1; k <= 8; ++k) {
        auto d = classify_symmetric(preset_pattern("star", k));
        EXPECT_EQ(d.r(), 1u);
        EXPECT_EQ(d.groups[0].k, k);
        EXPECT_EQ(d.groups[0].m(), 1);
        EXPECT_EQ(d.g, 1);
        EXPECT_EQ(d.f, 0);
    }
    for (int s = 2; s <= 8; ++s) {
        auto d = classify_symmetric(preset_pattern("clique_root", s));
        EXPECT_EQ(d.groups[0].k, 1);
        EXPECT_EQ(d.groups[0].m(), 1);
        EXPECT_EQ(d.g, s - 1);
        EXPECT_EQ(d.f, binom(s - 1, 2));
    }
    for (int m = 2; m <= 8; ++m) {
        auto d = classify_symmetric(preset_pattern("bijective_clique", m));
        EXPECT_EQ(d.groups[0].k, 1);
        EXPECT_EQ(d.groups[0].m(), m);
        EXPECT_EQ(d.f, binom(m, 2));
    }
    for (int l = 4; l <= 10; ++l) {
        auto d = classify_symmetric(preset_pattern("path", l));
        EXPECT_EQ(d.groups[0].k, 1);
        EXPECT_EQ(d.groups[0].m(), 2);
        EXPECT_EQ(d.s, l - 3);
        EXPECT_EQ(d.f, l - 2);
    }
}

TEST(ClassifyProperty, VertexCountIdentityAndRoundTrip) {
    std::vector<RootedPattern> all;
    for (int k = 1; k <= 6; ++k) all.push_back(preset_pattern("star", k));
    for (int s = 2; s <= 6; ++s) all.push_back(preset_pattern("clique_root", s));
    for (int m = 2; m <= 6; ++m) all.push_back(preset_pattern("bijective_clique", m));
    for (int l = 4; l <= 8; ++l) all.push_back(preset_pattern("path", l));
    all.push_back(preset_pattern("edge", 1));
    for (const auto& p : all) {
        auto d = classify_symmetric(p);
        EXPECT_EQ(d.root_count() + d.g + d.s, p.h());
        auto again = classify_symmetric(parse_pattern(serialize_pattern(p)));
        EXPECT_TRUE(d.same_parameters(again));
        EXPECT_EQ(d.classes, again.classes);
        EXPECT_EQ(d.attachment, again.attachment);
    }
}

TEST(ClassifyProperty, RelabelingInvariance) {
    Rng rng(2024);
    std::vector<RootedPattern> all;
    for (int k = 1; k <= 4; ++k) all.push_back(preset_pattern("star", k));
    for (int m = 2; m <= 5; ++m) all.push_back(preset_pattern("bijective_clique", m));
    for (int l = 4; l <= 7; ++l) all.push_back(preset_pattern("path", l));
    all.push_back(RootedPattern(9, {0, 1, 2, 3},
                                {{0, 4}, {1, 4}, {0, 5}, {1, 5}, {2, 6}, {3, 7}, {4, 8}, {6, 8}, {4, 5}}));
    for (const auto& p : all) {
        const auto base = classify_symmetric(p);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<int> perm(static_cast<std::size_t>(p.h()));
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size() - 1; i > 0; --i)
                std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform_below(i + 1))]);
            auto d = classify_symmetric(p.relabeled(perm));
            EXPECT_TRUE(base.same_parameters(d)) << serialize_pattern(p);
        }
    }
}

TEST(ResolvePatternRef, PresetSyntax) {
    EXPECT_EQ(resolve_pattern_ref("star:3"), preset_pattern("star", 3));
    EXPECT_EQ(resolve_pattern_ref("edge"), preset_pattern("edge", 1));
    EXPECT_THROW(resolve_pattern_ref("star:x"), PatternError);
}
