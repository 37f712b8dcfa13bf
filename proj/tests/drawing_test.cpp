#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "onepw/drawing.hpp"
#include "oracles.hpp"

namespace onepw {
namespace {

bool has_issue(const ValidationReport& r, const std::string& key) {
    return std::any_of(r.issues.begin(), r.issues.end(), [&](const std::string& s) { return s.find(key) != s.npos; });
}

OnePlanarDrawing k33_one_crossing() {
    auto k = complete_bipartite(3, 3);
    std::vector<EdgePair> pairs{{{0, 3}, {1, 4}}};
    auto d = planarize_from(k, pairs);
    if (!d) throw std::runtime_error("expected a drawing");
    return *d;
}

TEST(Planarize, PlanarGraphWithoutPairs) {
    SimpleGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    auto d = planarize_from(c4, {});
    ASSERT_TRUE(d.has_value());
    EXPECT_TRUE(validate_drawing(*d).valid());
    EXPECT_EQ(d->crossing_count(), 0);
    EXPECT_EQ(recover_graph(*d), c4);
}

TEST(Planarize, K33NeedsACrossing) {
    auto k = complete_bipartite(3, 3);
    EXPECT_FALSE(planarize_from(k, {}).has_value());
    auto d = k33_one_crossing();
    EXPECT_EQ(d.crossing_count(), 1);
    EXPECT_EQ(recover_graph(d), k.graph);
    EXPECT_EQ(d.planarization().vertex_count(), 7);
    EXPECT_EQ(d.planarization().edge_count(), 11);
}

TEST(Planarize, RejectsMalformedPairs) {
    auto k = complete_bipartite(3, 3);
    std::vector<EdgePair> share{{{0, 3}, {0, 4}}};
    EXPECT_THROW(planarize_from(k, share), ArgumentError);
    std::vector<EdgePair> twice{{{0, 3}, {1, 4}}, {{0, 3}, {2, 5}}};
    EXPECT_THROW(planarize_from(k, twice), ArgumentError);
    std::vector<EdgePair> missing{{{0, 1}, {2, 3}}};
    EXPECT_THROW(planarize_from(k, missing), ArgumentError);
}

// Every vertex-disjoint pair of K3,3 edges: the gadget decision matches the direct
// rotation-system enumeration, and accepted drawings recover K3,3.
TEST(Planarize, K33AllSinglePairsMatchOracle) {
    auto k = complete_bipartite(3, 3);
    int accepted = 0, total = 0;
    oracle::for_each_pairing(k.graph, 1, [&](const auto& pairs) {
        ++total;
        auto d = planarize_from(k, pairs);
        EXPECT_EQ(d.has_value(), oracle::pairing_feasible(k.graph, pairs));
        if (d) {
            ++accepted;
            EXPECT_EQ(recover_graph(*d), k.graph);
        }
        return false;
    });
    EXPECT_EQ(total, 18);
    EXPECT_GT(accepted, 0);
}

TEST(Validate, DetectsViolations) {
    auto d = k33_one_crossing();
    RawDrawing raw = d.raw();

    RawDrawing shared = raw;
    shared.registry[0].e2 = {0, 4};
    EXPECT_TRUE(has_issue(validate_drawing(shared), "convention violation"));

    // Drop one stub: the red vertex ends up with degree 3.
    {
        const auto& p = raw.planarization;
        std::vector<char> kv(static_cast<size_t>(p.vertex_count()), 1), ke(static_cast<size_t>(p.edge_count()), 1);
        ke.at(ke.size() - 1) = 0;
        RawDrawing broken = raw;
        broken.planarization = restrict_embedding(p, kv, ke).sub;
        EXPECT_TRUE(has_issue(validate_drawing(broken), "degree-4 violation"));
    }
    // Swap two neighbours at the red vertex: the rotation no longer alternates.
    {
        const auto& p = raw.planarization;
        auto rot = p.rotations();
        std::swap(rot[6][0], rot[6][1]);
        RawDrawing swapped = raw;
        swapped.planarization = PlaneEmbedding(p.vertex_count(), p.edges(), rot, p.labels());
        auto report = validate_drawing(swapped);
        EXPECT_TRUE(has_issue(report, "alternation violation"));
    }
    // A registry edge also drawn directly.
    {
        RawDrawing dup = raw;
        dup.registry[0].e1 = {0, 5};
        EXPECT_FALSE(validate_drawing(dup).valid());
    }
    EXPECT_THROW(recover_graph(shared), StructuralError);
}

TEST(DrawingText, RoundTripAndParseErrors) {
    auto d = k33_one_crossing();
    std::string text = to_text(d);
    std::istringstream in(text);
    RawDrawing back = parse_drawing(in);
    EXPECT_TRUE(validate_drawing(back).valid());
    OnePlanarDrawing again(back);
    EXPECT_EQ(to_text(again), text);

    std::istringstream low("v 3\ne 0 1\nr 0 0\nr 1 1\nx 0 1 2 1 2\n");
    EXPECT_THROW(parse_drawing(low), ParseError);
    std::istringstream cut(text.substr(0, text.find("r 3")));
    EXPECT_THROW(parse_drawing(cut), ParseError);
}

// Property: random graphs with random pairings; accepted drawings are valid, recover
// the input, and have |V| + k vertices and |E| + 2k edges.
TEST(Planarize, RandomPairingsRoundTrip) {
    std::mt19937 rng(5);
    int accepted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 4);
        std::vector<Edge> es;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng() % 2) es.emplace_back(a, b);
        SimpleGraph g(n, es);
        std::vector<EdgePair> pairs;
        std::vector<char> used(static_cast<size_t>(g.edge_count()), 0);
        for (int tries = 0; tries < 6; ++tries) {
            if (g.edge_count() < 2) break;
            int i = static_cast<int>(rng() % g.edge_count()), j = static_cast<int>(rng() % g.edge_count());
            Edge a = g.edge(i), b = g.edge(j);
            if (used[i] || used[j] || i == j || a.first == b.first || a.first == b.second || a.second == b.first ||
                a.second == b.second)
                continue;
            used[i] = used[j] = 1;
            pairs.emplace_back(a, b);
        }
        auto d = planarize_from(g, pairs);
        const int k = static_cast<int>(pairs.size());
        if (!d) continue;
        ++accepted;
        ASSERT_TRUE(validate_drawing(*d).valid());
        ASSERT_EQ(recover_graph(*d), g);
        ASSERT_EQ(d->planarization().vertex_count(), n + k);
        ASSERT_EQ(d->planarization().edge_count(), g.edge_count() + 2 * k);
        std::istringstream in(to_text(*d));
        ASSERT_EQ(OnePlanarDrawing(parse_drawing(in)).graph(), g);
    }
    EXPECT_GT(accepted, 50);
}

TEST(Planarize, RimVerticesEndOnOuterFace) {
    // Two degree-3 vertices inside a disc bounded by X: one crossing is needed.
    auto k = complete_bipartite(3, 2);
    std::vector<Vertex> rim{0, 1, 2};
    EXPECT_FALSE(planarize_from(k, {}, std::span<const Vertex>(rim)).has_value());
    bool any = false;
    oracle::for_each_pairing(k.graph, 1, [&](const auto& ps) {
        auto d = planarize_from(k, ps, std::span<const Vertex>(rim));
        EXPECT_EQ(d.has_value(), oracle::pairing_feasible(k.graph, ps, rim));
        if (d) {
            any = true;
            auto fs = trace_faces(d->planarization());
            auto outer = fs.faces[fs.outer].vertices(d->planarization());
            for (Vertex v : rim) EXPECT_TRUE(std::count(outer.begin(), outer.end(), v));
        }
        return false;
    });
    EXPECT_TRUE(any);
}

}  // namespace
}  // namespace onepw
