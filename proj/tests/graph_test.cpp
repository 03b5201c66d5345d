#include <gtest/gtest.h>

#include "gaincons/graph.hpp"
#include "test_support.hpp"

namespace gaincons {
namespace {

using testing::arc;
using testing::example_graph;

std::size_t arc_index(const ArcSet& g, Vertex tail, Vertex head) {
    for (std::size_t k = 0; k < g.arc_count(); ++k) {
        if (g.arc(k).tail == tail && g.arc(k).head == head) return k;
    }
    throw std::logic_error("arc not found");
}

TEST(GraphTest, RejectsDuplicatePairsAndBadLabels) {
    EXPECT_THROW(GainGraph(2, GroupOrder(3), {arc(1, 2, 0, 3), arc(1, 2, 1, 3)}), std::invalid_argument);
    EXPECT_THROW(GainGraph(2, GroupOrder(3), {arc(1, 3, 0, 3)}), std::invalid_argument);
    EXPECT_THROW(GainGraph(2, GroupOrder(3), {arc(1, 2, 0, 4)}), std::invalid_argument);
}

TEST(GraphTest, NeighborGraphValidation) {
    EXPECT_THROW(GainGraph(2, GroupOrder(2), {arc(1, 1, 0, 2)}, true), std::invalid_argument);
    EXPECT_THROW(GainGraph(1, GroupOrder(2), {arc(1, 1, 1, 2)}, true), std::invalid_argument);
    EXPECT_NO_THROW(example_graph(true));
    EXPECT_FALSE(example_graph(false).is_neighbor_graph());
}

TEST(GraphTest, WalkGainExamples) {
    const GainGraph g = example_graph(false);
    EXPECT_EQ(walk_gain(g, SemiWalk{2, {}}).value(), 0);
    const SemiWalk cycle{1,
                         {{arc_index(g, 1, 2), Direction::Forward},
                          {arc_index(g, 2, 3), Direction::Forward},
                          {arc_index(g, 3, 1), Direction::Forward}}};
    EXPECT_EQ(walk_gain(g, cycle).value(), 0);
    EXPECT_EQ(walk_gain(g, SemiWalk{1, {{arc_index(g, 1, 2), Direction::Forward}}}).value(), 1);
}

TEST(GraphTest, WalkErrors) {
    const GainGraph g = example_graph(false);
    EXPECT_THROW(walk_gain(g, SemiWalk{1, {{99, Direction::Forward}}}), std::invalid_argument);
    EXPECT_THROW(walk_gain(g, SemiWalk{2, {{arc_index(g, 1, 2), Direction::Forward}}}), std::invalid_argument);
    EXPECT_THROW(walk_gain(g, SemiWalk{2, {{arc_index(g, 1, 2), Direction::Backward}}}), std::invalid_argument);
}

TEST(GraphTest, SemiWalkGainExamples) {
    const GainGraph g = example_graph(false);
    const SemiWalk fwd{1, {{arc_index(g, 1, 2), Direction::Forward}, {arc_index(g, 2, 3), Direction::Forward}}};
    EXPECT_EQ(semiwalk_gain(g, fwd), walk_gain(g, fwd));
    // Backward over the alpha_2 arc (2,3).
    EXPECT_EQ(semiwalk_gain(g, SemiWalk{3, {{arc_index(g, 2, 3), Direction::Backward}}}).value(), 1);
    // 2 -> 1 against (1,2) then 1 -> 3 against (3,1): inv(1) * inv(0) = 2.
    const SemiWalk w{2, {{arc_index(g, 1, 2), Direction::Backward}, {arc_index(g, 3, 1), Direction::Backward}}};
    EXPECT_EQ(end_vertex(g, w), 3);
    EXPECT_EQ(semiwalk_gain(g, w).value(), 2);
}

TEST(GraphTest, UnionExamples) {
    const GainGraph g = example_graph();
    const ArcSet* one[] = {&g};
    EXPECT_EQ(static_cast<const ArcSet&>(graph_union(one)), static_cast<const ArcSet&>(GainMultigraph(g)));

    const GainGraph a(2, GroupOrder(3), {arc(1, 2, 0, 3)});
    const GainGraph b(2, GroupOrder(3), {arc(1, 2, 1, 3)});
    const GainMultigraph u = graph_union(a, b);
    ASSERT_EQ(u.arc_count(), 2u);
    EXPECT_EQ(u.arc(0), arc(1, 2, 0, 3));
    EXPECT_EQ(u.arc(1), arc(1, 2, 1, 3));

    EXPECT_THROW(graph_union(a, GainGraph(3, GroupOrder(3), {})), std::invalid_argument);
    EXPECT_THROW(graph_union(a, GainGraph(2, GroupOrder(2), {})), std::invalid_argument);
}

TEST(GraphTest, ConnectivityExamples) {
    EXPECT_TRUE(is_strongly_connected(example_graph()));
    const GainGraph empty(3, GroupOrder(2), {});
    EXPECT_EQ(weak_components(empty).size(), 3u);
    const GainGraph path(3, GroupOrder(2), {arc(1, 2, 0, 2), arc(2, 3, 0, 2)});
    EXPECT_FALSE(is_strongly_connected(path));
    EXPECT_EQ(weak_components(path).size(), 1u);
}

TEST(GraphTest, SccOrderingBySmallestMember) {
    const std::vector<std::pair<Vertex, Vertex>> arcs{{4, 2}, {2, 4}, {3, 1}, {1, 3}, {5, 5}};
    const auto sccs = strongly_connected_components(5, arcs);
    ASSERT_EQ(sccs.size(), 3u);
    EXPECT_EQ(sccs[0], (std::vector<Vertex>{1, 3}));
    EXPECT_EQ(sccs[1], (std::vector<Vertex>{2, 4}));
    EXPECT_EQ(sccs[2], (std::vector<Vertex>{5}));
}

// Random semi-walk of the given length on a multigraph (may revisit vertices).
SemiWalk random_semiwalk(testing::Rng& rng, const ArcSet& g, Vertex start, int length) {
    SemiWalk w{start, {}};
    Vertex at = start;
    for (int k = 0; k < length; ++k) {
        std::vector<Step> options;
        for (std::size_t i = 0; i < g.arc_count(); ++i) {
            if (g.arc(i).tail == at) options.push_back({i, Direction::Forward});
            if (g.arc(i).head == at) options.push_back({i, Direction::Backward});
        }
        if (options.empty()) break;
        const Step s = options[testing::uniform_int(rng, 0, static_cast<int>(options.size()) - 1)];
        w.steps.push_back(s);
        at = s.direction == Direction::Forward ? g.arc(s.arc).head : g.arc(s.arc).tail;
    }
    return w;
}

TEST(GraphProperty, ReversedSemiWalkHasInverseGain) {
    testing::Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = testing::uniform_int(rng, 1, 6);
        const int m = testing::uniform_int(rng, 2, 6);
        const GainGraph a = testing::random_gain_graph(rng, n, m, 0.4);
        const GainGraph b = testing::random_gain_graph(rng, n, m, 0.4);
        const GainMultigraph g = graph_union(a, b);
        const SemiWalk w = random_semiwalk(rng, g, testing::uniform_int(rng, 1, n), testing::uniform_int(rng, 0, 8));
        EXPECT_EQ(semiwalk_gain(g, reversed(g, w)), exp_inv(semiwalk_gain(g, w)));
    }
}

TEST(GraphProperty, WalkGainIsCompositional) {
    testing::Rng rng(12);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = testing::uniform_int(rng, 1, 6);
        const int m = testing::uniform_int(rng, 2, 6);
        const GainGraph g = testing::random_gain_graph(rng, n, m, 0.5);
        const SemiWalk w1 = random_semiwalk(rng, g, testing::uniform_int(rng, 1, n), testing::uniform_int(rng, 0, 6));
        const SemiWalk w2 = random_semiwalk(rng, g, end_vertex(g, w1), testing::uniform_int(rng, 0, 6));
        EXPECT_EQ(semiwalk_gain(g, concat(w1, w2)), exp_mul(semiwalk_gain(g, w1), semiwalk_gain(g, w2)));
    }
}

TEST(GraphProperty, UnionAssociativeCommutative) {
    testing::Rng rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = testing::uniform_int(rng, 1, 5);
        const int m = testing::uniform_int(rng, 2, 4);
        const GainGraph a = testing::random_gain_graph(rng, n, m, 0.4);
        const GainGraph b = testing::random_gain_graph(rng, n, m, 0.4);
        const GainGraph c = testing::random_gain_graph(rng, n, m, 0.4);
        EXPECT_EQ(static_cast<const ArcSet&>(graph_union(graph_union(a, b), c)),
                  static_cast<const ArcSet&>(graph_union(a, graph_union(b, c))));
        EXPECT_EQ(static_cast<const ArcSet&>(graph_union(a, b)), static_cast<const ArcSet&>(graph_union(b, a)));
    }
}

}  // namespace
}  // namespace gaincons
