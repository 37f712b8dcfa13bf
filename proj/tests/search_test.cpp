#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "graph_enum.hpp"
#include "onepw/search.hpp"
#include "oracles.hpp"

namespace onepw {
namespace {

bool mentions(const SearchResult& r, const std::string& word) {
    return std::any_of(r.provenance.begin(), r.provenance.end(),
                       [&](const std::string& s) { return s.find(word) != std::string::npos; });
}

void expect_sound(const SearchResult& r, const SimpleGraph& g) {
    ASSERT_EQ(r.verdict, Verdict::yes);
    ASSERT_TRUE(r.drawing);
    EXPECT_TRUE(validate_drawing(*r.drawing).valid());
    EXPECT_EQ(recover_graph(*r.drawing), g);
    EXPECT_EQ(r.drawing->crossing_count(), r.crossings);
}

TEST(Symmetry, AutomorphismCounts) {
    auto k33 = complete_bipartite(3, 3);
    std::vector<int> plain(6, 0);
    EXPECT_EQ(automorphisms(k33.graph, plain).size(), 72u);
    auto coloured = search_colouring(6, &k33.parts, {});
    EXPECT_EQ(automorphisms(k33.graph, coloured).size(), 36u);
    SimpleGraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    EXPECT_EQ(automorphisms(c6, plain).size(), 12u);
    SimpleGraph p4(4, {{0, 1}, {1, 2}, {2, 3}});
    std::vector<int> plain4(4, 0);
    auto autos = automorphisms(p4, plain4);
    ASSERT_EQ(autos.size(), 2u);
    EXPECT_EQ(autos[0], (Permutation{0, 1, 2, 3}));
}

TEST(Symmetry, CanonicalKeyIsAnInvariant) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        std::vector<Edge> es;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng() % 2) es.emplace_back(a, b);
        std::vector<int> colour(static_cast<size_t>(n));
        for (auto& c : colour) c = static_cast<int>(rng() % 2);
        std::vector<int> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> moved;
        std::vector<int> moved_colour(static_cast<size_t>(n));
        for (auto [a, b] : es) moved.emplace_back(perm[a], perm[b]);
        for (int v = 0; v < n; ++v) moved_colour[perm[v]] = colour[v];
        EXPECT_EQ(canonical_key(SimpleGraph(n, es), colour), canonical_key(SimpleGraph(n, moved), moved_colour));
    }
    std::vector<int> plain(6, 0);
    SimpleGraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    SimpleGraph two_triangles(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    EXPECT_NE(canonical_key(c6, plain), canonical_key(two_triangles, plain));
}

// Orderly generation keeps exactly one subset per orbit: compare with deduplication
// by canonical key of the edge-induced subgraph.
TEST(Symmetry, CanonicalSubsetsMatchOrbitCount) {
    for (auto [x, y] : {std::pair{2, 3}, {3, 3}, {2, 4}}) {
        auto k = complete_bipartite(x, y);
        auto colour = search_colouring(x + y, &k.parts, {});
        std::vector<Permutation> perms;
        for (const auto& p : automorphisms(k.graph, colour)) {
            Permutation ep;
            for (const auto& [a, b] : k.graph.edges()) ep.push_back(k.graph.edge_index(p[a], p[b]));
            perms.push_back(ep);
        }
        SubsetCanonizer canon(x * y, perms);
        for (int r = 0; r <= 4; ++r) {
            int orderly = 0;
            detail::for_each_canonical_subset(x * y, r, canon, [&](const std::vector<int>&) {
                ++orderly;
                return true;
            });
            std::set<std::string> keys;
            std::vector<int> cur;
            std::function<void(int)> rec = [&](int from) {
                if (static_cast<int>(cur.size()) == r) {
                    std::vector<Edge> es;
                    for (int e : cur) es.push_back(k.graph.edge(e));
                    keys.insert(canonical_key(SimpleGraph(x + y, es), colour));
                    return;
                }
                for (int e = from; e < x * y; ++e) {
                    cur.push_back(e);
                    rec(e + 1);
                    cur.pop_back();
                }
            };
            rec(0);
            EXPECT_EQ(orderly, static_cast<int>(keys.size())) << x << "," << y << " r=" << r;
        }
    }
}

TEST(Search, SmallExamples) {
    auto k23 = complete_bipartite(2, 3);
    auto r = decide_one_planar(k23.graph);
    expect_sound(r, k23.graph);
    EXPECT_EQ(r.crossings, 0);

    auto k33 = complete_bipartite(3, 3);
    r = min_crossings_one_planar(k33.graph, {}, k33.parts);
    expect_sound(r, k33.graph);
    EXPECT_EQ(r.crossings, 1);
    EXPECT_EQ(r.drawing->parts(), k33.parts);

    std::vector<Edge> k5, k6;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            k6.emplace_back(a, b);
            if (b < 5) k5.emplace_back(a, b);
        }
    r = decide_one_planar(SimpleGraph(5, k5));
    expect_sound(r, SimpleGraph(5, k5));
    EXPECT_EQ(r.crossings, 1);
    r = decide_one_planar(SimpleGraph(6, k6));
    expect_sound(r, SimpleGraph(6, k6));
    EXPECT_EQ(r.crossings, 3);

    for (auto [x, y, k] : {std::tuple{3, 4, 2}, {3, 5, 4}, {3, 6, 6}, {4, 4, 4}}) {
        auto g = complete_bipartite(x, y);
        r = decide_one_planar(g.graph, {}, g.parts);
        expect_sound(r, g.graph);
        EXPECT_EQ(r.crossings, k) << x << "," << y;
    }
}

TEST(Search, ScreensReject) {
    auto k37 = complete_bipartite(3, 7);
    auto r = decide_one_planar(k37.graph, {}, k37.parts);
    EXPECT_EQ(r.verdict, Verdict::no);
    EXPECT_TRUE(mentions(r, "main-bound"));
    EXPECT_EQ(r.stats.nodes, 0);
    auto k45 = complete_bipartite(4, 5);
    r = decide_one_planar(k45.graph);
    EXPECT_EQ(r.verdict, Verdict::no);
    EXPECT_TRUE(mentions(r, "karpov"));
}

TEST(Search, SeparatesTheThresholdAtKThreeSeven) {
    auto k = complete_bipartite(3, 7);
    auto es = k.graph.edges();
    es.pop_back();
    SimpleGraph g(10, es);
    auto r = decide_one_planar(g, {}, k.parts);
    expect_sound(r, g);
    EXPECT_EQ(g.edge_count(), main_bound(10, 3));
}

// Verdicts and minimum crossing counts agree with the rotation-system oracle, with and
// without symmetry pruning.
TEST(Search, AgreesWithRotationOracle) {
    auto graphs = testing::connected_bipartite_graphs(8);
    ASSERT_GT(graphs.size(), 100u);
    for (const auto& g : graphs) {
        const int expect = oracle::min_crossings(g);
        for (bool sym : {true, false}) {
            SearchBudget b;
            b.use_symmetry = sym;
            auto r = decide_one_planar(g, b);
            ASSERT_NE(r.verdict, Verdict::unknown);
            ASSERT_EQ(r.verdict == Verdict::yes ? r.crossings : -1, expect);
        }
    }
    // some non-bipartite graphs
    std::mt19937 rng(4);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 3);
        std::vector<Edge> es;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng() % 100 < 65 && es.size() < 10) es.emplace_back(a, b);
        SimpleGraph g(n, es);
        auto r = decide_one_planar(g);
        ASSERT_EQ(r.verdict == Verdict::yes ? r.crossings : -1, oracle::min_crossings(g));
    }
}

TEST(Search, ParallelAgreesWithSerial) {
    for (auto [x, y] : {std::pair{3, 5}, {3, 6}, {4, 4}}) {
        auto g = complete_bipartite(x, y);
        SearchBudget one, four;
        four.jobs = 4;
        auto a = decide_one_planar(g.graph, one, g.parts);
        auto b = decide_one_planar(g.graph, four, g.parts);
        EXPECT_EQ(a.crossings, b.crossings);
        expect_sound(b, g.graph);
        EXPECT_EQ(to_text(*a.drawing), to_text(*b.drawing));
    }
}

TEST(Search, BudgetExhaustionIsNotAVerdict) {
    auto g = complete_bipartite(3, 6);
    SearchBudget b;
    b.max_nodes = 10;
    auto r = decide_one_planar(g.graph, b, g.parts);
    EXPECT_EQ(r.verdict, Verdict::unknown);
    EXPECT_TRUE(mentions(r, "budget"));
    b = {};
    b.max_crossings = 3;
    r = decide_one_planar(g.graph, b, g.parts);
    EXPECT_EQ(r.verdict, Verdict::unknown);
    b.max_nodes = 0;
    EXPECT_THROW(decide_one_planar(g.graph, b), ArgumentError);
}

TEST(Search, ScreensOffReachTheSameVerdicts) {
    SearchBudget off;
    off.use_screens = false;
    auto k45 = complete_bipartite(4, 5);
    auto screened = decide_one_planar(k45.graph, {}, k45.parts);
    EXPECT_TRUE(mentions(screened, "karpov"));
    auto searched = decide_one_planar(k45.graph, off, k45.parts);
    EXPECT_EQ(searched.verdict, Verdict::no);
    EXPECT_FALSE(mentions(searched, "karpov"));
    EXPECT_EQ(searched.provenance.back(), "exhausted all pairings");
    for (auto [x, y] : {std::pair{3, 5}, {4, 4}}) {
        auto g = complete_bipartite(x, y);
        EXPECT_EQ(decide_one_planar(g.graph, off, g.parts).crossings, decide_one_planar(g.graph, {}, g.parts).crossings);
    }
}

BipartiteGraph three_by(int y, const std::vector<std::vector<int>>& nbrs) {
    std::vector<Edge> es;
    for (int j = 0; j < y; ++j)
        for (int a : nbrs[j]) es.emplace_back(a, 3 + j);
    std::vector<Side> sides(3, Side::X);
    sides.resize(static_cast<size_t>(3 + y), Side::Y);
    return {SimpleGraph(3 + y, es), Bipartition(sides)};
}

TEST(Disc, DegreeThreeCounts) {
    auto r = disc_min_crossings(three_by(3, {{0, 1, 2}, {0, 1}, {1, 2}}));
    EXPECT_EQ(r.crossings, 0);
    r = disc_min_crossings(three_by(3, {{0, 1, 2}, {0, 1, 2}, {0, 2}}));
    EXPECT_EQ(r.crossings, 1);
    r = disc_min_crossings(three_by(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}));
    EXPECT_EQ(r.crossings, 3);
    ASSERT_TRUE(r.drawing);
    EXPECT_TRUE(validate_drawing(*r.drawing).valid());
    r = disc_min_crossings(three_by(4, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}}));
    EXPECT_EQ(r.verdict, Verdict::no);
}

TEST(Disc, AgreesWithRotationOracle) {
    for (int y = 1; y <= 3; ++y)
        for (const auto& g : testing::spanning_subgraphs(3, y)) {
            auto rim = g.parts.members(Side::X);
            auto r = disc_min_crossings(g);
            ASSERT_EQ(r.verdict == Verdict::yes ? r.crossings : -1, oracle::min_crossings(g.graph, rim));
        }
}

TEST(Extremal, SmallCases) {
    for (int y = 2; y <= 5; ++y) {
        auto r = extremal_search(2, y);
        EXPECT_EQ(r.max_edges, 2 * y);
        EXPECT_TRUE(r.exhausted);
    }
    auto r = extremal_search(3, 4);
    EXPECT_EQ(r.max_edges, 12);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->graph().edge_count(), 12);
    EXPECT_THROW(extremal_search(3, 2), ArgumentError);
}

TEST(RimProbe, SmallRimsRespectTheConjecture) {
    auto rep = probe_problem5(60, 9, 3, 4);
    EXPECT_EQ(rep.violations(), 0);
    EXPECT_EQ(rep.undecided, 0);
    EXPECT_GT(rep.samples.size(), 10u);
}

}  // namespace
}  // namespace onepw
