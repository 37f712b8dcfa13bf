#pragma once

// Random plane embeddings: components grown as random planar graphs, then nested into
// random faces of earlier components.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "onepw/embedding.hpp"
#include "onepw/planarity.hpp"

namespace onepw::testing {

struct PlaneSpec {
    int min_vertices = 3;
    int max_vertices = 30;
    bool bipartite = false;
    int max_components = 4;
};

inline PlaneEmbedding random_plane_embedding(std::mt19937& rng, const PlaneSpec& spec = {}) {
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
    const int n = pick(spec.min_vertices, spec.max_vertices);
    const int comps = pick(1, std::min(spec.max_components, n));
    std::vector<int> comp_of(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) comp_of[v] = v < comps ? v : pick(0, comps - 1);
    std::vector<int> side(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) side[v] = static_cast<int>(rng() % 2);

    std::vector<Edge> edges;
    auto has = [&](Vertex a, Vertex b) {
        return std::find(edges.begin(), edges.end(), normalized({a, b})) != edges.end();
    };
    auto allowed = [&](Vertex a, Vertex b) {
        return a != b && comp_of[a] == comp_of[b] && (!spec.bipartite || side[a] != side[b]) && !has(a, b);
    };
    // spanning trees per component (some vertices may stay isolated when the side
    // constraint leaves nothing to attach to)
    std::vector<Vertex> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> attached(static_cast<size_t>(n), 0);
    for (Vertex v : order) {
        std::vector<Vertex> cand;
        for (Vertex u = 0; u < n; ++u)
            if (attached[u] && allowed(u, v)) cand.push_back(u);
        bool first_of_comp = true;
        for (Vertex u = 0; u < n; ++u) first_of_comp = first_of_comp && !(attached[u] && comp_of[u] == comp_of[v]);
        if (!cand.empty() && (rng() % 8 != 0 || !first_of_comp)) edges.push_back(normalized({cand[rng() % cand.size()], v}));
        attached[v] = 1;
    }
    // extra edges while planar
    const int extra = pick(0, 3 * n);
    for (int i = 0; i < extra; ++i) {
        Vertex a = pick(0, n - 1), b = pick(0, n - 1);
        if (!allowed(a, b)) continue;
        edges.push_back(normalized({a, b}));
        if (!planar_verdict(n, edges)) edges.pop_back();
    }
    auto rot = planar_rotation(n, edges);
    PlaneEmbedding bare(n, edges, std::move(*rot));
    std::vector<Nesting> nesting(static_cast<size_t>(bare.component_count()));
    for (int c = 0; c < bare.component_count(); ++c) {
        const int faces = static_cast<int>(bare.local_faces(c).size());
        nesting[c].outer_face = pick(0, faces - 1);
        if (c > 0 && rng() % 3 != 0) {
            int h = pick(0, c - 1);
            const int hf = static_cast<int>(bare.local_faces(h).size());
            if (hf < 2) continue;
            int f = pick(0, hf - 2);
            if (f >= nesting[h].outer_face) ++f;  // an inner face of the host
            nesting[c].host_component = h;
            nesting[c].host_face = f;
        }
    }
    return bare.with_nesting(std::move(nesting));
}

}  // namespace onepw::testing
