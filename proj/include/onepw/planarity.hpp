#pragma once

// Planarity of small multigraphs with a rotation-system witness.
//
// The verdict and embedding come from Boost's Boyer-Myrvold implementation; parallel
// edges are subdivided before handing the graph over, since that implementation expects
// a simple graph. brute_force_planar() is the independent exhaustive oracle.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>

#include "onepw/embedding.hpp"
#include "onepw/error.hpp"
#include "onepw/graph.hpp"

namespace onepw {

struct PlanarityVerdict {
    bool planar = false;
    std::optional<PlaneEmbedding> embedding;
};

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

inline bool has_parallel_edges(std::span<const Edge> edges) {
    std::vector<Edge> sorted;
    sorted.reserve(edges.size());
    for (const auto& e : edges) sorted.push_back(normalized(e));
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

inline bool is_two_colourable(int n, std::span<const Edge> edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> colour(static_cast<size_t>(n), -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (colour[v] < 0) {
                    colour[v] = 1 - colour[u];
                    stack.push_back(v);
                } else if (colour[v] == colour[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Euler-bound screens for simple inputs; true means "certainly nonplanar".
inline bool exceeds_planar_edge_bound(int n, std::span<const Edge> edges) {
    const long long e = static_cast<long long>(edges.size());
    if (n < 3 || e <= 2LL * n - 4) return false;
    if (has_parallel_edges(edges)) return false;
    if (e > 3LL * n - 6) return true;
    return is_two_colourable(n, edges);
}

/// Runs Boyer-Myrvold; on success fills `rotation` with darts of the input edge list.
inline bool boost_planar(int n, std::span<const Edge> edges, std::vector<std::vector<Dart>>* rotation) {
    const int m = static_cast<int>(edges.size());
    std::vector<Edge> normal;
    normal.reserve(edges.size());
    for (const auto& e : edges) normal.push_back(normalized(e));
    std::vector<int> by(static_cast<size_t>(m));
    std::iota(by.begin(), by.end(), 0);
    std::sort(by.begin(), by.end(), [&](int a, int b) { return normal[a] < normal[b] || (normal[a] == normal[b] && a < b); });
    std::vector<char> duplicate(static_cast<size_t>(m), 0);
    for (size_t i = 1; i < by.size(); ++i)
        if (normal[by[i]] == normal[by[i - 1]]) duplicate[by[i]] = 1;

    // Parallel copies beyond the first are subdivided. attach[k] = (input edge, tag) for
    // boost edge k: tag 2 means both ends are input vertices, 0/1 means the half that
    // touches the first/second input endpoint.
    BoostGraph bg(static_cast<size_t>(n));
    std::vector<std::pair<int, int>> attach;
    int next_vertex = n;
    auto add = [&](int a, int b, int input, int tag) {
        boost::add_edge(a, b, boost::property<boost::edge_index_t, int>(static_cast<int>(attach.size())), bg);
        attach.emplace_back(input, tag);
    };
    for (int i = 0; i < m; ++i) {
        auto [a, b] = edges[i];
        if (!duplicate[i]) {
            add(a, b, i, 2);
        } else {
            int mid = next_vertex++;
            boost::add_vertex(bg);
            add(a, mid, i, 0);
            add(mid, b, i, 1);
        }
    }
    if (!rotation) return boost::boyer_myrvold_planarity_test(bg);

    std::vector<std::vector<BoostEdge>> storage(boost::num_vertices(bg));
    auto emb = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, bg));
    bool planar = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                                      boost::boyer_myrvold_params::embedding = emb);
    if (!planar) return false;
    auto eidx = boost::get(boost::edge_index, bg);
    rotation->assign(static_cast<size_t>(n), {});
    for (int v = 0; v < n; ++v) {
        for (const BoostEdge& be : storage[v]) {
            auto [input, tag] = attach[static_cast<size_t>(boost::get(eidx, be))];
            const Vertex a = edges[input].first;
            Dart d;
            if (tag == 2) d = (a == v) ? 2 * input : 2 * input + 1;
            else d = (tag == 0) ? 2 * input : 2 * input + 1;
            (*rotation)[v].push_back(d);
        }
    }
    return true;
}

}  // namespace detail

/// Verdict-only planarity test (no witness), used in search inner loops.
inline bool planar_verdict(int n, std::span<const Edge> edges) {
    if (detail::exceeds_planar_edge_bound(n, edges)) return false;
    return detail::boost_planar(n, edges, nullptr);
}

/// Rotation system of some plane embedding, or nullopt.
inline std::optional<std::vector<std::vector<Dart>>> planar_rotation(int n, std::span<const Edge> edges) {
    if (detail::exceeds_planar_edge_bound(n, edges)) return std::nullopt;
    std::vector<std::vector<Dart>> rot;
    if (!detail::boost_planar(n, edges, &rot)) return std::nullopt;
    return rot;
}

inline PlanarityVerdict is_planar(const Multigraph& g) {
    auto rot = planar_rotation(g.vertex_count(), g.edges());
    if (!rot) return {false, std::nullopt};
    PlaneEmbedding emb(g.vertex_count(), g.edges(), std::move(*rot));
    if (!euler_check(emb)) throw StructuralError("planarity witness failed the Euler check");
    return {true, std::move(emb)};
}

/// Planarity with every rim vertex on one common face, which is made the unbounded face.
/// Decided by adding an apex adjacent to all rim vertices and deleting it afterwards.
inline PlanarityVerdict embed_with_outer_vertices(const Multigraph& g, std::span<const Vertex> rim) {
    const int n = g.vertex_count();
    std::vector<Edge> edges = g.edges();
    std::vector<Vertex> rim_sorted(rim.begin(), rim.end());
    std::sort(rim_sorted.begin(), rim_sorted.end());
    rim_sorted.erase(std::unique(rim_sorted.begin(), rim_sorted.end()), rim_sorted.end());
    for (Vertex v : rim_sorted) {
        if (v < 0 || v >= n) throw ArgumentError("rim vertex out of range");
        edges.emplace_back(v, n);
    }
    auto rot = planar_rotation(n + 1, edges);
    if (!rot) return {false, std::nullopt};
    PlaneEmbedding with_apex(n + 1, edges, std::move(*rot));
    std::vector<char> keep_v(static_cast<size_t>(n + 1), 1);
    keep_v[n] = 0;
    std::vector<char> keep_e(edges.size(), 1);
    FaceStructure fs = trace_faces(with_apex);
    int apex_face = fs.some_face_at(with_apex, n);
    Restriction r = restrict_embedding(with_apex, keep_v, keep_e, apex_face);
    return {true, std::move(r.sub)};
}

namespace detail {

/// Faces of a rotation system given as rot_next per dart; returns per-component counts.
struct RotationFaceCounter {
    int n;
    std::vector<Edge> edges;
    std::vector<int> comp;
    int comps;
    std::vector<int> v_count, e_count;

    RotationFaceCounter(int vertex_count, std::span<const Edge> es) : n(vertex_count), edges(es.begin(), es.end()) {
        auto [label, count] = connected_components(n, edges);
        comp = std::move(label);
        comps = count;
        v_count.assign(static_cast<size_t>(comps), 0);
        e_count.assign(static_cast<size_t>(comps), 0);
        for (int v = 0; v < n; ++v) ++v_count[comp[v]];
        for (const auto& [a, b] : edges) ++e_count[comp[a]];
    }

    bool genus_zero(const std::vector<int>& rot_next, std::vector<char>& seen, std::vector<int>& faces) const {
        const int darts = 2 * static_cast<int>(edges.size());
        std::fill(seen.begin(), seen.end(), 0);
        std::fill(faces.begin(), faces.end(), 0);
        for (Dart s = 0; s < darts; ++s) {
            if (seen[s]) continue;
            Dart d = s;
            do {
                seen[d] = 1;
                d = rot_next[twin(d)];
            } while (d != s);
            ++faces[comp[(s & 1) ? edges[s >> 1].second : edges[s >> 1].first]];
        }
        for (int c = 0; c < comps; ++c) {
            int f = e_count[c] == 0 ? 1 : faces[c];
            if (v_count[c] - e_count[c] + f != 2) return false;
        }
        return true;
    }
};

}  // namespace detail

/// Exhaustive oracle: tries every rotation system (one dart per vertex fixed) and
/// reports whether any passes the Euler check. Exponential; guarded by max_edges.
inline bool brute_force_planar(const Multigraph& g, int max_edges = 10) {
    if (g.edge_count() > max_edges)
        throw SizeError("brute_force_planar: " + std::to_string(g.edge_count()) + " edges exceeds guard of " +
                        std::to_string(max_edges));
    const int n = g.vertex_count();
    const int darts = 2 * g.edge_count();
    detail::RotationFaceCounter counter(n, g.edges());
    std::vector<std::vector<Dart>> star(static_cast<size_t>(n));
    for (int e = 0; e < g.edge_count(); ++e) {
        star[g.edges()[e].first].push_back(2 * e);
        star[g.edges()[e].second].push_back(2 * e + 1);
    }
    std::vector<int> rot_next(static_cast<size_t>(darts));
    auto apply = [&](int v) {
        const auto& s = star[v];
        for (size_t i = 0; i < s.size(); ++i) rot_next[s[i]] = s[(i + 1) % s.size()];
    };
    for (int v = 0; v < n; ++v) apply(v);
    std::vector<char> seen(static_cast<size_t>(darts));
    std::vector<int> faces(static_cast<size_t>(counter.comps));
    while (true) {
        if (counter.genus_zero(rot_next, seen, faces)) return true;
        int v = 0;
        for (; v < n; ++v) {
            auto& s = star[v];
            if (s.size() > 2 && std::next_permutation(s.begin() + 1, s.end())) {
                apply(v);
                break;
            }
            if (s.size() > 2) apply(v);  // wrapped back to sorted order
        }
        if (v == n) return false;
    }
}

}  // namespace onepw
