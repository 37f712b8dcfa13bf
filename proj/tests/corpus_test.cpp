#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "onepw/bounds.hpp"
#include "onepw/cache.hpp"
#include "onepw/export.hpp"
#include "onepw/extension.hpp"

namespace onepw {
namespace {

RawDrawing load(const std::string& name) {
    std::ifstream in(std::string(ONEPW_CORPUS) + "/" + name);
    EXPECT_TRUE(in) << name;
    return parse_drawing(in);
}

TEST(Corpus, K36Fixture) {
    RawDrawing raw = load("k36.drawing");
    ASSERT_TRUE(validate_drawing(raw).valid()) << validate_drawing(raw).text();
    OnePlanarDrawing d(raw);
    EXPECT_EQ(d.graph(), complete_bipartite(3, 6).graph);
    EXPECT_EQ(d.graph().edge_count(), main_bound(9, 3));
    auto b = extend(d);
    EXPECT_EQ(b.h.sub.edge_count(), d.crossing_count());
    EXPECT_GE(b.a_size(), 1);
    for (Vertex v = 0; v < b.dxw.vertex_count(); ++v) {
        if (!b.is_white(v)) continue;
        EXPECT_GE(b.f.residue[v], 0);
    }
    for (int i = 0; i < d.crossing_count(); ++i) EXPECT_TRUE(check_empty_triangle(b, b.red_vertex(i)));
    EXPECT_TRUE(find_separating_2cycles(b).empty());
    for (const auto& r : {check_proposition_2(b), check_proposition_3(b), check_proposition_4(b), check_proposition_5(b)})
        EXPECT_TRUE(r.passed()) << r.name;
    auto tri = classify_cellular_3faces(b);
    EXPECT_TRUE(tri.unexpected.empty());
    for (const auto& rec : tri.records) EXPECT_TRUE(rec.disc_bound);

    auto c = certify(d, "k36");
    EXPECT_TRUE(c.passed()) << c.text();
    EXPECT_EQ(c.q("t0"), 0);
    EXPECT_EQ(c.checks.back().line(), "E<=2V+4x-12-t0/2: 18<=18 PASS");
}

TEST(Corpus, NegativeControls) {
    OnePlanarDrawing sep(load("separating_2cycle.drawing"));
    auto b = extend(sep);
    EXPECT_FALSE(find_separating_2cycles(b).empty());
    EXPECT_FALSE(check_proposition_2(b).hypothesis_met);
    auto c = certify(sep);
    EXPECT_FALSE(c.hypotheses_met());
    EXPECT_TRUE(c.checks.empty());

    auto b2 = extend(OnePlanarDrawing(load("prop2_violation.drawing")));
    EXPECT_TRUE(find_separating_2cycles(b2).empty());
    EXPECT_FALSE(check_proposition_2(b2).violations.empty());
    auto b4 = extend(OnePlanarDrawing(load("prop4_violation.drawing")));
    EXPECT_FALSE(check_proposition_4(b4).violations.empty());

    auto rep = validate_drawing(load("red_degree3.drawing"));
    EXPECT_FALSE(rep.valid());
    EXPECT_NE(rep.text().find("degree-4 violation"), std::string::npos);

    EXPECT_THROW(load("truncated.drawing"), ParseError);
}

TEST(Export, DotAndSvg) {
    OnePlanarDrawing d(load("k36.drawing"));
    const auto& p = d.planarization();
    std::string dot = to_dot(p, drawing_style(d));
    EXPECT_EQ(dot.rfind("graph ", 0), 0u);
    EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), p.vertex_count() + p.edge_count() + 3);
    std::string svg = to_svg(p, drawing_style(d));
    auto count = [](const std::string& s, const std::string& what) {
        size_t c = 0;
        for (size_t pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++c;
        return c;
    };
    EXPECT_EQ(count(svg, "<circle"), static_cast<size_t>(p.vertex_count()));
    EXPECT_EQ(count(svg, "<line"), static_cast<size_t>(p.edge_count()));
    EXPECT_EQ(count(svg, "class=\"red\" cx"), static_cast<size_t>(d.crossing_count()));
    EXPECT_NE(svg.find("</svg>"), std::string::npos);

    auto b = extend(d);
    std::string bundle = to_dot(b.dxw, bundle_style(b));
    EXPECT_EQ(count(bundle, "style=dashed"), static_cast<size_t>(d.crossing_count()));
    EXPECT_EQ(count(bundle, "class=\"black\"]") + count(bundle, "class=\"black\", style"), static_cast<size_t>(d.crossing_count()));
}

TEST(Cache, LatestRecordWins) {
    auto path = std::filesystem::temp_directory_path() / "onepw_cache_test.tsv";
    std::filesystem::remove(path);
    ResultCache cache(path);
    EXPECT_FALSE(cache.find("k", "1planar"));
    cache.append({"k", "1planar", "YES crossings=2", "a.drawing", "b", "t1"});
    cache.append({"k", "disc", "NO", "", "b", "t2"});
    cache.append({"k", "1planar", "YES crossings=1", "b.drawing", "b", "t3"});
    {
        std::ofstream out(path, std::ios::app);
        out << "k\t1planar\ttruncated";
    }
    auto hit = cache.find("k", "1planar");
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->verdict, "YES crossings=1");
    EXPECT_EQ(cache.find("k", "disc")->verdict, "NO");
    EXPECT_THROW(cache.append({"a\tb", "q", "v", "", "", ""}), ArgumentError);
    std::filesystem::remove(path);

    auto k = complete_bipartite(3, 3);
    SimpleGraph relabelled(6, {{3, 0}, {3, 1}, {3, 2}, {4, 0}, {4, 1}, {4, 2}, {5, 0}, {5, 1}, {5, 2}});
    EXPECT_EQ(cache_key(k.graph), cache_key(relabelled));
}

}  // namespace
}  // namespace onepw
