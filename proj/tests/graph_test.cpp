#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "onepw/graph.hpp"
#include "onepw/text_format.hpp"

namespace onepw {
namespace {

SimpleGraph complete(int n) {
    std::vector<Edge> e;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
    return SimpleGraph(n, e);
}

SimpleGraph from_mask(int n, std::uint32_t mask) {
    std::vector<Edge> e;
    int bit = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++bit)
            if (mask >> bit & 1u) e.emplace_back(a, b);
    return SimpleGraph(n, e);
}

TEST(SimpleGraph, RejectsLoopsDuplicatesAndRange) {
    EXPECT_THROW(SimpleGraph(3, {{0, 0}}), ArgumentError);
    EXPECT_THROW(SimpleGraph(3, {{0, 1}, {1, 0}}), ArgumentError);
    EXPECT_THROW(SimpleGraph(3, {{0, 3}}), ArgumentError);
    SimpleGraph g(4, {{2, 1}, {0, 3}});
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 3}, {1, 2}}));
    EXPECT_EQ(g.edge_index(2, 1), 1);
    EXPECT_EQ(g.edge_index(0, 1), -1);
}

TEST(CompleteBipartite, EdgeCounts) {
    EXPECT_EQ(complete_bipartite(2, 3).graph.edge_count(), 6);
    EXPECT_EQ(complete_bipartite(3, 6).graph.edge_count(), 18);
    auto k37 = complete_bipartite(3, 7);
    EXPECT_EQ(k37.graph.edge_count(), 21);
    EXPECT_TRUE(k37.parts.is_valid_for(k37.graph));
    EXPECT_EQ(k37.parts.x(), 3);
    EXPECT_EQ(k37.parts.y(), 7);
    EXPECT_THROW(complete_bipartite(0, 3), ArgumentError);
    EXPECT_THROW(complete_bipartite(3, 0), ArgumentError);
}

TEST(InducedSubgraph, Examples) {
    std::vector<Vertex> three{0, 1, 2};
    EXPECT_EQ(induced_subgraph(complete(4), three).graph, complete(3));

    SimpleGraph g = from_mask(5, 0b1011001101u);
    std::vector<Vertex> all{0, 1, 2, 3, 4};
    auto same = induced_subgraph(g, all);
    EXPECT_EQ(same.graph, g);
    EXPECT_EQ(same.original, all);

    auto k33 = complete_bipartite(3, 3);
    auto part = induced_subgraph(k33.graph, k33.parts.members(Side::X));
    EXPECT_EQ(part.graph.vertex_count(), 3);
    EXPECT_EQ(part.graph.edge_count(), 0);

    std::vector<Vertex> bad{0, 7};
    EXPECT_THROW(induced_subgraph(g, bad), ArgumentError);
}

// induced(induced(g, A), B') == induced(g, A ∩ B) where B' is B expressed in A's ids.
void check_composition(const SimpleGraph& g, std::uint32_t a_mask, std::uint32_t b_mask) {
    const int n = g.vertex_count();
    std::vector<Vertex> a, ab;
    for (int v = 0; v < n; ++v) {
        if (a_mask >> v & 1u) a.push_back(v);
        if ((a_mask & b_mask) >> v & 1u) ab.push_back(v);
    }
    auto first = induced_subgraph(g, a);
    std::vector<Vertex> b_in_a;
    for (size_t i = 0; i < first.original.size(); ++i)
        if (b_mask >> first.original[i] & 1u) b_in_a.push_back(static_cast<Vertex>(i));
    auto second = induced_subgraph(first.graph, b_in_a);
    auto direct = induced_subgraph(g, ab);
    ASSERT_EQ(second.graph, direct.graph);
    for (size_t i = 0; i < second.original.size(); ++i)
        ASSERT_EQ(first.original[second.original[i]], direct.original[i]);
}

TEST(InducedSubgraph, CompositionExhaustiveSmall) {
    for (int n = 0; n <= 5; ++n) {
        const std::uint32_t graphs = 1u << (n * (n - 1) / 2);
        for (std::uint32_t gm = 0; gm < graphs; ++gm) {
            SimpleGraph g = from_mask(n, gm);
            for (std::uint32_t a = 0; a < (1u << n); ++a)
                for (std::uint32_t b = 0; b < (1u << n); b += 3) check_composition(g, a, b);
        }
    }
}

TEST(InducedSubgraph, CompositionAllGraphsOnSixAndSevenVertices) {
    for (int n = 6; n <= 7; ++n) {
        const std::uint32_t graphs = 1u << (n * (n - 1) / 2);
        for (std::uint32_t gm = 0; gm < graphs; ++gm) {
            std::uint32_t a = (gm * 2654435761u) >> 7 & ((1u << n) - 1);
            std::uint32_t b = (gm * 40503u + 17u) & ((1u << n) - 1);
            check_composition(from_mask(n, gm), a, b);
        }
    }
}

TEST(TwoColouring, DetectsOddCycles) {
    EXPECT_FALSE(two_colouring(complete(3)).has_value());
    auto c = two_colouring(complete_bipartite(2, 3).graph);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(c->is_valid_for(complete_bipartite(2, 3).graph));
}

TEST(GraphText, ParsesAndRejects) {
    std::istringstream in("# k22\nv 4\np 0 X\np 1 X\np 2 Y\np 3 Y\ne 0 2\ne 0 3\ne 1 2\ne 1 3\n");
    auto parsed = parse_graph(in);
    EXPECT_EQ(parsed.graph.edge_count(), 4);
    ASSERT_TRUE(parsed.parts.has_value());
    EXPECT_EQ(parsed.parts->x(), 2);

    std::istringstream bad("v 3\ne 0 1\ne 1 x\n");
    try {
        parse_graph(bad);
        FAIL() << "expected parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    std::istringstream same_part("v 2\np 0 X\np 1 X\ne 0 1\n");
    EXPECT_THROW(parse_graph(same_part), ParseError);
}

}  // namespace
}  // namespace onepw
