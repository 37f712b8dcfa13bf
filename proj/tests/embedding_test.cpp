#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "onepw/embedding.hpp"
#include "onepw/planarity.hpp"
#include "onepw/text_format.hpp"
#include "test_util.hpp"

namespace onepw {
namespace {

using testing::from_coordinates;

PlaneEmbedding triangle() { return from_coordinates({{0, 0}, {2, 0}, {1, 2}}, {{0, 1}, {1, 2}, {2, 0}}); }

PlaneEmbedding two_triangles_nested() {
    auto flat = from_coordinates({{0, 0}, {6, 0}, {3, 6}, {2, 1}, {4, 1}, {3, 3}},
                                 {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    // Put the small triangle inside the bounded face of the big one.
    int outer0 = flat.nesting(0).outer_face;
    int inner0 = 1 - outer0;
    return flat.with_nesting({flat.nesting(0), Nesting{0, inner0, flat.nesting(1).outer_face}});
}

TEST(TraceFaces, Triangle) {
    auto emb = triangle();
    auto fs = trace_faces(emb);
    ASSERT_EQ(fs.faces.size(), 2u);
    for (const auto& f : fs.faces) {
        EXPECT_EQ(f.size, 3);
        EXPECT_TRUE(f.cellular);
    }
}

TEST(TraceFaces, SingleEdge) {
    auto emb = from_coordinates({{0, 0}, {1, 0}}, {{0, 1}});
    auto fs = trace_faces(emb);
    ASSERT_EQ(fs.faces.size(), 1u);
    EXPECT_EQ(fs.faces[0].size, 2);
    EXPECT_TRUE(fs.faces[0].cellular);
}

TEST(TraceFaces, NestedTriangleMakesNoncellularFace) {
    auto emb = two_triangles_nested();
    auto fs = trace_faces(emb);
    ASSERT_EQ(fs.faces.size(), 3u);
    int noncellular = 0;
    for (const auto& f : fs.faces) {
        if (!f.cellular) {
            ++noncellular;
            EXPECT_EQ(f.boundary_walks.size(), 2u);
            EXPECT_EQ(f.size, 6);
        } else {
            EXPECT_EQ(f.size, 3);
        }
    }
    EXPECT_EQ(noncellular, 1);
}

TEST(TraceFaces, IsolatedVertexLivesInOuterFace) {
    auto emb = from_coordinates({{0, 0}, {2, 0}, {1, 2}, {9, 9}}, {{0, 1}, {1, 2}, {2, 0}});
    auto fs = trace_faces(emb);
    ASSERT_EQ(fs.faces.size(), 2u);
    EXPECT_EQ(fs.face_of_isolated(emb, 3), fs.outer);
    EXPECT_FALSE(fs.faces[fs.outer].cellular);
}

TEST(EulerCheck, Examples) {
    auto k4 = from_coordinates({{0, 0}, {4, 0}, {2, 4}, {2, 1}},
                               {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
    EXPECT_TRUE(euler_check(k4));
    EXPECT_TRUE(euler_check(PlaneEmbedding(1, {}, {{}})));
    EXPECT_TRUE(euler_check(PlaneEmbedding(0, {}, {})));

    // Every rotation system of K5 has genus > 0: sample many.
    std::vector<Edge> k5;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) k5.emplace_back(a, b);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<std::vector<Dart>> rot(5);
        for (int e = 0; e < 10; ++e) {
            rot[k5[e].first].push_back(2 * e);
            rot[k5[e].second].push_back(2 * e + 1);
        }
        for (auto& r : rot) std::shuffle(r.begin(), r.end(), rng);
        EXPECT_FALSE(euler_check(PlaneEmbedding(5, k5, rot)));
    }
}

TEST(PlaneEmbedding, RejectsBadRotations) {
    std::vector<Edge> e{{0, 1}};
    EXPECT_THROW(PlaneEmbedding(2, e, {{0}, {}}), StructuralError);
    EXPECT_THROW(PlaneEmbedding(2, e, {{1}, {0}}), StructuralError);
    EXPECT_THROW(PlaneEmbedding(2, e, {{0, 0}, {1}}), StructuralError);
    EXPECT_NO_THROW(PlaneEmbedding(2, e, {{0}, {1}}));
}

TEST(Restriction, DeletingApexOfWheelLeavesCycleAndResidue) {
    // Wheel: hub 0 in the middle of 4-cycle 1..4.
    auto w = from_coordinates({{0, 0}, {1, 0}, {0, -1}, {-1, 0}, {0, 1}},
                              {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}});
    std::vector<char> kv{0, 1, 1, 1, 1};
    std::vector<char> ke(8, 1);
    auto r = restrict_embedding(w, kv, ke);
    EXPECT_EQ(r.sub.vertex_count(), 4);
    EXPECT_EQ(r.sub.edge_count(), 4);
    ASSERT_EQ(r.sub_faces.faces.size(), 2u);
    EXPECT_GE(r.residue[0], 0);
    EXPECT_NE(r.residue[0], r.sub_faces.outer);
    EXPECT_TRUE(euler_check(r.sub));
    // all four triangles of the wheel collapse into the inner face
    auto fs = trace_faces(w);
    int into_inner = 0;
    for (size_t f = 0; f < fs.faces.size(); ++f)
        if (r.face_map[f] == r.residue[0]) ++into_inner;
    EXPECT_EQ(into_inner, 4);
}

TEST(Restriction, DeletingEdgeOfTriangleMergesFaces) {
    auto t = triangle();
    std::vector<char> kv(3, 1), ke{1, 1, 0};
    auto r = restrict_embedding(t, kv, ke);
    EXPECT_EQ(r.sub_faces.faces.size(), 1u);
    EXPECT_EQ(r.sub_faces.faces[0].size, 4);
}

TEST(Restriction, KeepsNestingOfSurvivingComponents) {
    auto emb = two_triangles_nested();
    // remove one edge of the inner triangle: it becomes a path still inside the big triangle
    std::vector<char> kv(6, 1), ke{1, 1, 1, 1, 1, 0};
    auto r = restrict_embedding(emb, kv, ke);
    ASSERT_EQ(r.sub.component_count(), 2);
    EXPECT_FALSE(r.sub.nesting(1).is_root());
    EXPECT_EQ(r.sub_faces.faces.size(), 2u);
    // delete the big triangle entirely; the path's face is the residue of the big triangle vertices
    std::vector<char> kv2{0, 0, 0, 1, 1, 1};
    auto r2 = restrict_embedding(emb, kv2, std::vector<char>(6, 1));
    EXPECT_EQ(r2.sub.component_count(), 1);
    EXPECT_EQ(r2.sub_faces.faces.size(), 2u);
    EXPECT_EQ(r2.residue[0], r2.sub_faces.outer);
}

TEST(Restriction, WithOuterFaceChangesUnboundedFace) {
    auto emb = two_triangles_nested();
    auto fs = trace_faces(emb);
    int small_inner = -1;
    for (size_t f = 0; f < fs.faces.size(); ++f)
        if (fs.faces[f].cellular && static_cast<int>(f) != fs.outer) {
            auto vs = fs.faces[f].vertices(emb);
            if (vs.front() == 3) small_inner = static_cast<int>(f);
        }
    ASSERT_GE(small_inner, 0);
    auto flipped = with_outer_face(emb, small_inner);
    auto fs2 = trace_faces(flipped);
    EXPECT_EQ(fs2.faces.size(), 3u);
    EXPECT_EQ(fs2.faces[fs2.outer].vertices(flipped), (std::vector<Vertex>{3, 4, 5}));
    EXPECT_TRUE(fs2.faces[fs2.outer].cellular);
}

TEST(TextFormat, RoundTrip) {
    auto emb = two_triangles_nested().with_labels(
        {VertexLabel::black, VertexLabel::white, VertexLabel::red, VertexLabel::plain, VertexLabel::plain,
         VertexLabel::plain});
    std::string text = to_text(emb);
    std::istringstream in(text);
    auto back = parse_embedding(in);
    EXPECT_EQ(back.edges(), emb.edges());
    EXPECT_EQ(back.rotations(), emb.rotations());
    EXPECT_EQ(back.nestings(), emb.nestings());
    EXPECT_EQ(back.labels(), emb.labels());
    EXPECT_EQ(to_text(back), text);
}

TEST(TextFormat, TruncatedEmbeddingIsParseError) {
    auto emb = triangle();
    std::string text = to_text(emb);
    text = text.substr(0, text.rfind("r "));  // drop the last rotation line
    std::istringstream in(text);
    EXPECT_THROW(parse_embedding(in), ParseError);
    std::istringstream junk("v 2\ne 0 1\nr 0 0\nr 1 0\n");
    EXPECT_THROW(parse_embedding(junk), ParseError);
}

// Property: restricting a random planar embedding keeps Euler's formula and the
// face count predicted by v - e + f = 1 + c.
TEST(Restriction, RandomDeletionsStayPlane) {
    std::mt19937 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 7);
        std::vector<Edge> edges;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng() % 3 == 0) edges.emplace_back(a, b);
        auto rot = planar_rotation(n, edges);
        if (!rot) continue;
        PlaneEmbedding emb(n, edges, *rot);
        std::vector<char> kv(static_cast<size_t>(n)), ke(edges.size());
        for (auto& k : kv) k = rng() % 4 != 0;
        for (auto& k : ke) k = rng() % 3 != 0;
        auto r = restrict_embedding(emb, kv, ke);
        ASSERT_TRUE(euler_check(r.sub));
        const int v = r.sub.vertex_count(), e = r.sub.edge_count(), c = r.sub.component_count();
        if (v == 0) continue;
        ASSERT_EQ(static_cast<int>(r.sub_faces.faces.size()), 1 + c + e - v);
        for (Vertex x = 0; x < n; ++x)
            if (!kv[x]) {
                ASSERT_GE(r.residue[x], 0);
            }
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace onepw
