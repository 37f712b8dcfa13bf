// Regenerates the fixture drawings in corpus/. Deterministic: fixed seeds, first match.
//   make_corpus <dir>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "onepw/bounds.hpp"
#include "onepw/drawing.hpp"
#include "onepw/extension.hpp"
#include "onepw/search.hpp"

namespace fs = std::filesystem;
using namespace onepw;

namespace {

void save(const fs::path& dir, const std::string& name, const std::string& header, const RawDrawing& d) {
    std::ofstream out(dir / name);
    out << header;
    write_drawing(out, d);
    std::cout << "wrote " << (dir / name).string() << '\n';
}

bool propositions_hold(const ExtensionBundle& b) {
    for (const auto& r : {check_proposition_2(b), check_proposition_3(b), check_proposition_4(b), check_proposition_5(b)})
        if (!r.passed()) return false;
    return classify_cellular_3faces(b).unexpected.empty();
}

OnePlanarDrawing random_drawing(std::mt19937& rng, int max_x, int max_y, int percent, int max_pairs) {
    while (true) {
        const int x = 2 + static_cast<int>(rng() % (max_x - 1));
        const int y = 2 + static_cast<int>(rng() % (max_y - 1));
        auto full = complete_bipartite(x, y);
        std::vector<Edge> es;
        for (const auto& e : full.graph.edges())
            if (static_cast<int>(rng() % 100) < percent) es.push_back(e);
        SimpleGraph g(x + y, es);
        std::vector<EdgePair> pairs;
        std::vector<char> used(es.size(), 0);
        const int want = static_cast<int>(rng() % (max_pairs + 1));
        for (int t = 0; t < 4 * want && static_cast<int>(pairs.size()) < want && es.size() >= 2; ++t) {
            size_t i = rng() % es.size(), j = rng() % es.size();
            auto [a, b] = es[i];
            auto [c, d] = es[j];
            if (i == j || used[i] || used[j] || a == c || a == d || b == c || b == d) continue;
            used[i] = used[j] = 1;
            pairs.emplace_back(es[i], es[j]);
        }
        if (auto d = planarize_from(g, pairs, full.parts)) return *d;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_corpus <dir>\n";
        return 2;
    }
    fs::path dir = argv[1];
    fs::create_directories(dir);

    // K3,6 with six crossings: the first drawing (in search order) whose certificate
    // passes with t0 = 0, whose H has a parallel pair, and which has two 3-crossing
    // triangles.
    auto k36 = complete_bipartite(3, 6);
    std::optional<OnePlanarDrawing> chosen;
    int seen = 0;
    for_each_drawing(k36.graph, k36.parts, {}, 6, {}, [&](const OnePlanarDrawing& d) {
        ++seen;
        auto c = certify(d, "k36");
        if (!c.passed() || c.q("t0") != 0 || c.q("A") < 1 || c.q("t3") != 2) return false;
        if (!propositions_hold(extend(d))) return false;
        chosen = d;
        return true;
    });
    if (!chosen) {
        std::cerr << "no K3,6 drawing matched after " << seen << " candidates\n";
        return 1;
    }
    save(dir, "k36.drawing", "# K3,6, 6 crossings, found by search; H has a parallel pair, t0 = 0\n", chosen->raw());
    {
        std::string text = to_text(*chosen);
        std::ofstream out(dir / "truncated.drawing");
        out << text.substr(0, text.size() / 2);
        std::cout << "wrote " << (dir / "truncated.drawing").string() << '\n';
    }

    auto k33 = complete_bipartite(3, 3);
    auto k33d = min_crossings_one_planar(k33.graph, {}, k33.parts);
    save(dir, "k33.drawing", "# K3,3, 1 crossing\n", k33d.drawing->raw());

    auto k23 = complete_bipartite(2, 3);
    save(dir, "k23_planar.drawing", "# K2,3, no crossings\n", planarize_from(k23, {})->raw());

    // drop one half-edge at the red vertex of the K3,3 drawing
    {
        RawDrawing raw = k33d.drawing->raw();
        const auto& p = raw.planarization;
        std::vector<char> keep_v(static_cast<size_t>(p.vertex_count()), 1), keep_e(static_cast<size_t>(p.edge_count()), 1);
        const Vertex w = raw.graph_vertex_count();
        for (int e = 0; e < p.edge_count(); ++e)
            if (p.edges()[e].second == w || p.edges()[e].first == w) {
                keep_e[e] = 0;
                break;
            }
        raw.planarization = restrict_embedding(p, keep_v, keep_e).sub;
        save(dir, "red_degree3.drawing", "# K3,3 drawing with one half-edge at the crossing removed\n", raw);
    }

    std::mt19937 rng(2024);
    bool sep = false, p2 = false, p4 = false;
    for (int trial = 0; trial < 200000 && !(sep && p2 && p4); ++trial) {
        auto d = random_drawing(rng, 6, 6, 80, 8);
        if (d.crossing_count() < 2) continue;
        auto b = extend(d);
        const bool has_sep = !find_separating_2cycles(b).empty();
        if (!sep && has_sep) {
            save(dir, "separating_2cycle.drawing", "# H has a separating 2-cycle\n", d.raw());
            sep = true;
        }
        if (has_sep) continue;
        if (!p2 && !check_proposition_2(b).passed()) {
            save(dir, "prop2_violation.drawing", "# not crossing-minimal: a 2-cycle of H has black or red vertices on both sides\n", d.raw());
            p2 = true;
        }
        if (!p4 && !check_proposition_4(b).passed()) {
            save(dir, "prop4_violation.drawing", "# not crossing-minimal: a 3-cycle of H has both 2-paths of a parallel pair on one side\n", d.raw());
            p4 = true;
        }
    }
    if (!(sep && p2 && p4)) {
        std::cerr << "negative controls missing: sep=" << sep << " prop2=" << p2 << " prop4=" << p4 << '\n';
        return 1;
    }
    return 0;
}
