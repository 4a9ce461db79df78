#include "chiforge/base_properties.hpp"
#include "chiforge/graph.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace chiforge;

TEST(Graph, RejectsLoopsDuplicatesAndRange)
{
    EXPECT_THROW(Graph(3, {{1, 1}}), PreconditionError);
    EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), PreconditionError);
    EXPECT_THROW(Graph(3, {{0, 3}}), PreconditionError);
    Graph g(4, {{2, 1}, {0, 3}});
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(g.adjacent(1, 2));
    EXPECT_FALSE(g.adjacent(0, 2));
    EXPECT_EQ(g.edges(), (std::vector<VertexPair>{{0, 3}, {1, 2}}));
}

TEST(Graph, InducedKeepsVertexOrder)
{
    Graph c5 = named::cycle(5);
    std::vector<Vertex> pick{4, 0, 1};
    Graph sub = c5.induced(pick);
    EXPECT_EQ(sub, Graph(3, {{0, 1}, {1, 2}}));
}

TEST(Digraph, RejectsAntiparallelAndRepeats)
{
    EXPECT_THROW(Digraph(2, {{0, 1}, {1, 0}}), PreconditionError);
    EXPECT_THROW(Digraph(2, {{0, 1}, {0, 1}}), PreconditionError);
    EXPECT_THROW(Digraph(2, {{0, 0}}), PreconditionError);
}

TEST(Digraph, TopologicalOrder)
{
    Digraph d(4, {{3, 1}, {1, 0}, {2, 0}});
    auto order = d.topological_order();
    ASSERT_TRUE(order);
    EXPECT_EQ(*order, (std::vector<Vertex>{2, 3, 1, 0}));
    EXPECT_FALSE(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}).acyclic());
}

TEST(Hypergraph, NormalisesEdges)
{
    Hypergraph h(5, {{4, 2, 0}, {1, 0}});
    EXPECT_EQ(h.edges(), (std::vector<Hypergraph::Edge>{{0, 1}, {0, 2, 4}}));
    EXPECT_THROW(Hypergraph(3, {{0, 0, 1}}), PreconditionError);
    EXPECT_THROW(Hypergraph(3, {{0, 1}, {1, 0}}), PreconditionError);
    EXPECT_EQ(h.min_edge_size(), 2u);
}

TEST(OrderedHypergraph, RejectsNonPermutation)
{
    EXPECT_THROW(OrderedHypergraph(Hypergraph(3), {0, 0, 1}), PreconditionError);
    OrderedHypergraph oh(Hypergraph(3, {{0, 1, 2}}), {2, 0, 1});
    EXPECT_EQ(oh.ordered_edge(0), (std::vector<Vertex>{2, 0, 1}));
}

TEST(BaseProperties, SingleArc)
{
    auto r = check_base_properties(Digraph(2, {{0, 1}}));
    EXPECT_TRUE(r.acyclic);
    EXPECT_TRUE(r.unique_paths);
}

TEST(BaseProperties, TwoPathsDetected)
{
    auto r = check_base_properties(Digraph(3, {{0, 1}, {1, 2}, {0, 2}}));
    EXPECT_TRUE(r.acyclic);
    EXPECT_FALSE(r.unique_paths);
}

TEST(BaseProperties, CyclicInput)
{
    auto r = check_base_properties(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_FALSE(r.acyclic);
    EXPECT_FALSE(r.unique_paths);
}

TEST(BaseProperties, AgreesWithPathCountingOnRandomDags)
{
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto n = static_cast<std::size_t>(rng.between(1, 9));
        Digraph d = fixtures::random_dag(n, 1, 3, rng);
        bool unique = true;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v)
                if (u != v && fixtures::count_paths(d, u, v) > 1)
                    unique = false;
        auto r = check_base_properties(d);
        EXPECT_TRUE(r.acyclic);
        EXPECT_EQ(r.unique_paths, unique) << "trial " << trial;
    }
}

TEST(ReachDistance, PathDigraph)
{
    Digraph d(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(reach_distance(d, 0, 2), 2u);
    EXPECT_EQ(reach_distance(d, 2, 0), std::nullopt);
    EXPECT_EQ(reach_distance(d, 1, 1), std::nullopt);
}

TEST(ReachDistance, AmbiguousDistanceFails)
{
    Digraph d(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_THROW(reach_distance(d, 0, 2), PreconditionError);
}

// Random out-forests: every vertex has at most one in-arc, so paths are
// unique and the additivity law can be checked on every chain.
TEST(DistanceTable, AdditiveOnChains)
{
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto n = static_cast<std::size_t>(rng.between(2, 30));
        std::vector<VertexPair> arcs;
        for (Vertex v = 1; v < n; ++v)
            if (rng.chance(4, 5))
                arcs.emplace_back(static_cast<Vertex>(rng.below(v)), v);
        Digraph d(n, std::span<const VertexPair>(arcs));
        ASSERT_TRUE(check_base_properties(d).unique_paths);
        DistanceTable table(d);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v)
                for (Vertex w = 0; w < n; ++w) {
                    auto uv = table.at(u, v), vw = table.at(v, w), uw = table.at(u, w);
                    if (uv && vw) {
                        ASSERT_TRUE(uw);
                        EXPECT_EQ(*uw, *uv + *vw);
                    }
                }
    }
}

TEST(DirectionChanges, ConsistentFourCycle)
{
    auto r = verify_direction_changes(Digraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 0);
    ASSERT_TRUE(r.min_direction_changes);
    EXPECT_EQ(*r.min_direction_changes, CycleMinimum(std::size_t{0}));
}

TEST(DirectionChanges, AlternatingFourCycle)
{
    auto r = verify_direction_changes(Digraph(4, {{0, 1}, {2, 1}, {2, 3}, {0, 3}}), 4);
    ASSERT_TRUE(r.min_direction_changes);
    EXPECT_EQ(*r.min_direction_changes, CycleMinimum(std::size_t{4}));
    EXPECT_EQ(r.meets_minimum, true);
    EXPECT_FALSE(r.partial);
}

TEST(DirectionChanges, ForestHasNoCycle)
{
    auto r = verify_direction_changes(Digraph(4, {{0, 1}, {1, 2}, {1, 3}}), 3);
    ASSERT_TRUE(r.min_direction_changes);
    EXPECT_TRUE(std::holds_alternative<NoCycle>(*r.min_direction_changes));
    EXPECT_EQ(r.meets_minimum, true);
}

TEST(DirectionChanges, BudgetFlagsPartialReport)
{
    Rng rng(3);
    Digraph d = fixtures::random_dag(12, 1, 2, rng);
    auto r = verify_direction_changes(d, 0, CycleEnumerationLimits{std::nullopt, 10});
    EXPECT_TRUE(r.partial);
}

TEST(DirectionChanges, EvenOnEveryCycleAndMinimumMatchesBruteForce)
{
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        auto n = static_cast<std::size_t>(rng.between(3, 8));
        Digraph d = fixtures::random_dag(n, 2, 5, rng);
        auto cycles = fixtures::all_cycles(d.underlying());
        std::optional<std::size_t> best;
        for (const auto & c : cycles) {
            auto k = direction_changes(d, c);
            EXPECT_EQ(k % 2, 0u);
            best = best ? std::min(*best, k) : k;
        }
        auto r = verify_direction_changes(d, 2);
        EXPECT_EQ(r.cycles_examined, cycles.size());
        ASSERT_TRUE(r.min_direction_changes);
        if (best)
            EXPECT_EQ(*r.min_direction_changes, CycleMinimum(*best));
        else
            EXPECT_TRUE(std::holds_alternative<NoCycle>(*r.min_direction_changes));
    }
}
