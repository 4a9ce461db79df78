#include "chiforge/base_properties.hpp"
#include "chiforge/bases.hpp"
#include "chiforge/oracle/clique.hpp"
#include "chiforge/oracle/coloring.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace chiforge;

TEST(Zykov, Sizes)
{
    std::vector<std::pair<std::size_t, std::size_t>> expected{{1, 0}, {2, 1}, {8, 10}, {536, 1566}};
    for (std::size_t n = 1; n <= 4; ++n) {
        auto z = build_zykov(n);
        EXPECT_EQ(z.digraph.vertex_count(), expected[n - 1].first);
        EXPECT_EQ(z.digraph.arc_count(), expected[n - 1].second);
        EXPECT_EQ(z.labels.size(), z.digraph.vertex_count());
        EXPECT_EQ(std::set<std::string>(z.labels.begin(), z.labels.end()).size(), z.labels.size());
    }
    EXPECT_THROW(build_zykov(5), PreconditionError);
    EXPECT_THROW(build_zykov(0), PreconditionError);
}

TEST(Zykov, SizesFollowRecurrence)
{
    // |V_{n+1}| = n|V_n| + |V_n|^n and |E_{n+1}| = n|E_n| + n|V_n|^n.
    std::size_t v = 1, e = 0;
    for (std::size_t n = 1; n < 4; ++n) {
        std::size_t power = 1;
        for (std::size_t i = 0; i < n; ++i)
            power *= v;
        std::tie(v, e) = std::make_pair(n * v + power, n * e + n * power);
        auto z = build_zykov(n + 1);
        EXPECT_EQ(z.digraph.vertex_count(), v);
        EXPECT_EQ(z.digraph.arc_count(), e);
    }
}

TEST(Zykov, BaseProperties)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        auto z = build_zykov(n);
        auto r = check_base_properties(z.digraph);
        EXPECT_TRUE(r.acyclic);
        EXPECT_TRUE(r.unique_paths) << "n = " << n;
        EXPECT_EQ(clique_number(z.digraph.underlying()).size, std::min<std::size_t>(n, 2));
    }
}

TEST(Zykov, ThreeHasUniquePathsByEnumeration)
{
    auto z = build_zykov(3);
    for (Vertex u = 0; u < 8; ++u)
        for (Vertex v = 0; v < 8; ++v)
            if (u != v) {
                EXPECT_LE(fixtures::count_paths(z.digraph, u, v), 1u);
            }
}

TEST(Zykov, ApexDistance)
{
    auto z = build_zykov(3);
    for (Vertex a = 0; a < 2; ++a)
        for (Vertex b = 0; b < 2; ++b) {
            std::vector<Vertex> tuple{a, b};
            Vertex w = z.apex(tuple);
            EXPECT_EQ(z.labels[w], "a(" + std::to_string(a) + "," + std::to_string(b) + ")");
            EXPECT_EQ(reach_distance(z.digraph, z.copy_vertex(0, a), w), 1u);
            EXPECT_EQ(reach_distance(z.digraph, z.copy_vertex(1, b), w), 1u);
        }
    // Copy 1's arc 0 -> 1 then 1 -> apex(1, *) gives distance 2.
    std::vector<Vertex> tuple{1, 0};
    EXPECT_EQ(reach_distance(z.digraph, z.copy_vertex(0, 0), z.apex(tuple)), 2u);
}

TEST(Zykov, ChromaticNumberSmall)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        auto chi = chromatic_number(build_zykov(n).digraph.underlying());
        EXPECT_EQ(chi.chromatic_number, n);
    }
}

TEST(NesetrilRodl, StageZero)
{
    auto none = [](std::size_t, std::size_t) -> TemplateHypergraph { throw std::logic_error("unused"); };
    auto two = build_nr(2, 3, 0, none);
    EXPECT_EQ(two.digraph.vertex_count(), 2u);
    EXPECT_EQ(two.digraph.arc_count(), 1u);

    auto three = build_nr(3, 3, 0, none);
    EXPECT_EQ(three.digraph.vertex_count(), 6u);
    EXPECT_EQ(three.digraph.arc_count(), 3u);
    EXPECT_EQ(three.part, (std::vector<std::size_t>{0, 0, 1, 1, 2, 2}));
    std::set<Vertex> touched;
    std::set<std::pair<std::size_t, std::size_t>> part_pairs;
    for (auto [u, v] : three.digraph.arcs()) {
        EXPECT_TRUE(touched.insert(u).second);
        EXPECT_TRUE(touched.insert(v).second);
        EXPECT_LT(three.part[u], three.part[v]);
        part_pairs.emplace(three.part[u], three.part[v]);
    }
    EXPECT_EQ(part_pairs.size(), 3u);
}

TEST(NesetrilRodl, StageOneWithFiveCycle)
{
    auto b = build_nr(3, 3, 1, odd_cycle_provider(5));
    EXPECT_EQ(b.digraph.vertex_count(), 25u);
    EXPECT_EQ(b.digraph.arc_count(), 15u);
    for (auto [u, v] : b.digraph.arcs())
        EXPECT_LT(b.part[u], b.part[v]);
    std::set<std::size_t> parts(b.part.begin(), b.part.end());
    EXPECT_EQ(parts.size(), 3u);
    auto r = verify_direction_changes(b.digraph, 3);
    EXPECT_FALSE(r.partial);
    EXPECT_EQ(r.meets_minimum, true);
    ASSERT_EQ(b.stages.size(), 1u);
    EXPECT_EQ(b.stages[0].template_girth, Extended(5));
    EXPECT_EQ(b.stages[0].source, "cycle:5");
}

TEST(NesetrilRodl, TemplateMismatch)
{
    auto triple = [](std::size_t, std::size_t) { return TemplateHypergraph{Hypergraph(3, {{0, 1, 2}}), false, "bad"}; };
    EXPECT_THROW(build_nr(3, 3, 1, triple), PreconditionError);
    // Stage 2 of n = 3 needs a 10-uniform template.
    EXPECT_THROW(build_nr(3, 3, 2, odd_cycle_provider(5)), PreconditionError);
    // A triangle template has girth 3 < 4.
    EXPECT_THROW(build_nr(3, 4, 1, odd_cycle_provider(3)), PreconditionError);
    EXPECT_THROW(build_nr(1, 3, 0, odd_cycle_provider(3)), PreconditionError);
}

TEST(NesetrilRodl, FullRecursionForTwoParts)
{
    auto b = build_nr(2, 3, 2, eh_provider(TemplateSpec{}));
    EXPECT_EQ(b.digraph.vertex_count(), 2u);
    EXPECT_EQ(b.digraph.arc_count(), 1u);
    EXPECT_EQ(chromatic_number(b.digraph.underlying()).chromatic_number, 2u);
}

TEST(NesetrilRodl, HypergraphStageZero)
{
    auto none = [](std::size_t, std::size_t) -> TemplateHypergraph { throw std::logic_error("unused"); };
    // k = 3, n = 3: m = 5 parts of size C(4, 2) = 6, one edge per 3 parts.
    auto b = build_nr_hypergraph(3, 3, 3, 0, none);
    const auto & h = b.hypergraph.hypergraph();
    EXPECT_EQ(h.vertex_count(), 30u);
    EXPECT_EQ(h.edge_count(), 10u);
    std::set<Vertex> seen;
    for (const auto & e : h.edges()) {
        std::set<std::size_t> parts;
        for (Vertex v : e) {
            EXPECT_TRUE(seen.insert(v).second);
            parts.insert(b.part[v]);
        }
        EXPECT_EQ(parts.size(), 3u);
    }
    // The graph case is the 2-uniform instance of the same recursion.
    auto g = build_nr_hypergraph(2, 3, 3, 1, odd_cycle_provider(5));
    auto d = build_nr(3, 3, 1, odd_cycle_provider(5));
    EXPECT_EQ(prec_digraph(g.hypergraph).digraph, d.digraph);
}

TEST(NesetrilRodl, HypergraphStageOneKeepsGirthAndDirectionChanges)
{
    TemplateSpec spec;
    spec.vertices = 30;
    spec.sampled_edges = 8;
    spec.mode = TemplateMode::assumed;
    auto b = build_nr_hypergraph(3, 3, 3, 1, eh_provider(spec));
    const auto & h = b.hypergraph.hypergraph();
    EXPECT_FALSE(hypergraph_girth(h) < Extended(3));
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = b.hypergraph.ordered_edge(i);
        for (std::size_t j = 0; j + 1 < e.size(); ++j)
            EXPECT_LT(b.part[e[j]], b.part[e[j + 1]]);
    }
    auto prec = prec_digraph(b.hypergraph);
    EXPECT_FALSE(prec.collision);
    auto r = verify_direction_changes(prec.digraph, 3);
    EXPECT_FALSE(r.partial);
    EXPECT_EQ(r.meets_minimum, true);
    EXPECT_FALSE(b.stages.at(0).certified);
}

TEST(ErdosHajnal, FiveCycleQualifies)
{
    TemplateSpec spec{2, 3, 3};
    Hypergraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    auto c = certify_template(c5, spec);
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.girth, Extended(5));
    Hypergraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    EXPECT_EQ(certify_template(c4, spec).chromatic_ok, false);
}

TEST(ErdosHajnal, GraphTemplateIsCertifiedAndDeterministic)
{
    TemplateSpec spec{2, 3, 3};
    spec.vertices = 9;
    spec.sampled_edges = 14;
    spec.seed = 5;
    auto a = gen_eh_hypergraph(spec);
    auto b = gen_eh_hypergraph(spec);
    EXPECT_EQ(a.hypergraph, b.hypergraph);
    EXPECT_TRUE(a.verified);
    EXPECT_GE(chromatic_number(a.hypergraph.clique_expansion()).chromatic_number, 3u);
}

TEST(ErdosHajnal, LinearTripleSystemWithoutTwoColouring)
{
    TemplateSpec spec{3, 3, 3};
    spec.vertices = 15;
    spec.sampled_edges = 60;
    spec.seed = 7;
    auto t = gen_eh_hypergraph(spec);
    ASSERT_TRUE(t.verified);
    const auto & h = t.hypergraph;
    EXPECT_LE(h.vertex_count(), 25u);
    // Linear: no two edges share two vertices.
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        for (std::size_t j = i + 1; j < h.edge_count(); ++j) {
            std::vector<Vertex> common;
            std::set_intersection(h.edge(i).begin(), h.edge(i).end(), h.edge(j).begin(), h.edge(j).end(), std::back_inserter(common));
            EXPECT_LE(common.size(), 1u);
        }
    // No 2-colouring among all 2^|V| assignments.
    const std::uint32_t n = static_cast<std::uint32_t>(h.vertex_count());
    bool colourable = false;
    for (std::uint32_t mask = 0; mask < (1u << n) && ! colourable; ++mask) {
        bool ok = true;
        for (const auto & e : h.edges()) {
            unsigned ones = 0;
            for (Vertex v : e)
                ones += mask >> v & 1;
            if (ones == 0 || ones == e.size()) {
                ok = false;
                break;
            }
        }
        colourable = ok;
    }
    EXPECT_FALSE(colourable);
}

TEST(ErdosHajnal, AssumedModeIsFlagged)
{
    TemplateSpec spec{3, 3, 4};
    spec.mode = TemplateMode::assumed;
    auto t = gen_eh_hypergraph(spec);
    EXPECT_FALSE(t.verified);
    EXPECT_FALSE(t.girth < Extended(4));
}

TEST(PathBase, Basics)
{
    auto one = build_path_base(1);
    EXPECT_EQ(one.arc_count(), 1u);
    auto three = build_path_base(3);
    EXPECT_EQ(reach_distance(three, 0, 3), 3u);
    for (std::size_t n = 1; n < 30; n += 7) {
        auto r = check_base_properties(build_path_base(n));
        EXPECT_TRUE(r.acyclic && r.unique_paths);
    }
    EXPECT_THROW(build_path_base(0), PreconditionError);
}

TEST(LoosePath, Basics)
{
    auto one = build_loose_hyperpath(3, 1);
    EXPECT_EQ(one.hypergraph().edge_count(), 1u);
    EXPECT_EQ(prec_digraph(one).digraph.arc_count(), 2u);
    auto two = build_loose_hyperpath(3, 2);
    EXPECT_EQ(two.hypergraph().vertex_count(), 5u);
    EXPECT_EQ(two.hypergraph().edges(), (std::vector<Hypergraph::Edge>{{0, 1, 2}, {2, 3, 4}}));
    for (std::size_t m = 2; m <= 5; ++m)
        for (std::size_t len = 1; len <= 6; ++len)
            EXPECT_TRUE(hypergraph_girth(build_loose_hyperpath(m, len).hypergraph()).is_infinite());
}

TEST(PrecDigraph, Examples)
{
    OrderedHypergraph single(Hypergraph(3, {{0, 1, 2}}), {2, 0, 1});
    auto s = prec_digraph(single);
    EXPECT_EQ(s.digraph.arcs(), (std::vector<VertexPair>{{0, 1}, {2, 0}}));
    EXPECT_FALSE(s.collision);

    auto path = prec_digraph(build_loose_hyperpath(3, 2));
    EXPECT_EQ(path.digraph.arcs(), (std::vector<VertexPair>{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
    EXPECT_EQ(path.arc_source, (std::vector<std::size_t>{0, 0, 1, 1}));
    auto r = check_base_properties(path.digraph);
    EXPECT_TRUE(r.acyclic && r.unique_paths);

    auto clash = prec_digraph(OrderedHypergraph(Hypergraph(4, {{0, 1, 2}, {1, 2, 3}})));
    EXPECT_TRUE(clash.collision);
    EXPECT_EQ(clash.collided_arcs, (std::vector<VertexPair>{{1, 2}}));
}
