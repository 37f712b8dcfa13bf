#pragma once

// The extension of a bipartite drawing's planarization by one black edge e_w per
// crossing w, the derived plane graphs F (black + red), H (black) and H' = H - A, and
// checkers for the structural propositions about them.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "onepw/drawing.hpp"
#include "onepw/embedding.hpp"
#include "onepw/error.hpp"
#include "onepw/graph.hpp"

namespace onepw {

struct ExtensionBundle {
    OnePlanarDrawing drawing;
    Bipartition parts;
    PlaneEmbedding dxw;                 // planarization edges first, then e_w per crossing
    std::vector<int> ew_of;             // crossing index -> edge of dxw
    std::vector<Edge> black_ends;       // crossing index -> (x1, x2), e_w runs x1 -> x2
    Restriction f;                      // dxw on X and W
    Restriction h;                      // dxw on X
    Restriction h_prime;                // dxw on X without the A edges
    std::vector<char> in_a;             // crossing index -> e_w belongs to A
    std::vector<int> h_edge_crossing;   // edge of H -> crossing index
    std::vector<int> hp_edge_crossing;  // edge of H' -> crossing index

    int crossing_count() const { return drawing.crossing_count(); }
    int red_vertex(int crossing) const { return drawing.graph_vertex_count() + crossing; }
    bool is_black(Vertex v) const { return v < drawing.graph_vertex_count() && parts.in_x(v); }
    bool is_white(Vertex v) const { return v < drawing.graph_vertex_count() && !parts.in_x(v); }
    int a_size() const { return static_cast<int>(std::count(in_a.begin(), in_a.end(), 1)); }
};

/// Deletes every vertex outside `keep`; each deleted vertex is assigned the face of
/// the result that contains it.
inline Restriction sub_embedding_with_residue(const PlaneEmbedding& emb, std::span<const char> keep) {
    std::vector<char> all_edges(static_cast<size_t>(emb.edge_count()), 1);
    return restrict_embedding(emb, keep, all_edges);
}

namespace detail {

inline Bipartition bundle_parts(const OnePlanarDrawing& d) {
    if (d.parts()) return *d.parts();
    auto c = two_colouring(d.graph());
    if (!c) throw ArgumentError("extension needs a bipartite drawing");
    return *c;
}

}  // namespace detail

/// Derives F, H, A and H' from a given extension dxw (planarization edges followed by
/// one black edge per crossing, in crossing order). extend() builds dxw by the
/// insertion rule; tests may hand in other placements.
inline ExtensionBundle build_bundle(const OnePlanarDrawing& d, PlaneEmbedding dxw, std::vector<Edge> black_ends) {
    ExtensionBundle b;
    b.drawing = d;
    b.parts = detail::bundle_parts(d);
    const PlaneEmbedding& p = d.planarization();
    const int n = d.graph_vertex_count();
    const int total = p.vertex_count();
    const int m = p.edge_count();
    const int k = d.crossing_count();
    if (dxw.vertex_count() != total || dxw.edge_count() != m + k)
        throw ArgumentError("extension has the wrong size for this drawing");
    b.dxw = std::move(dxw);
    b.black_ends = std::move(black_ends);
    for (int i = 0; i < k; ++i) b.ew_of.push_back(m + i);

    std::vector<char> keep_f(static_cast<size_t>(total), 0), keep_h(static_cast<size_t>(total), 0);
    for (Vertex v = 0; v < total; ++v) {
        keep_f[v] = v >= n || b.parts.in_x(v);
        keep_h[v] = v < n && b.parts.in_x(v);
    }
    b.f = sub_embedding_with_residue(b.dxw, keep_f);
    b.h = sub_embedding_with_residue(b.dxw, keep_h);

    // A: within each parallel class keep the edge of the smallest red vertex.
    b.in_a.assign(static_cast<size_t>(k), 0);
    std::map<Edge, int> first;
    for (int i = 0; i < k; ++i) {
        Edge key = normalized(b.black_ends[i]);
        if (!first.emplace(key, i).second) b.in_a[i] = 1;
    }
    std::vector<char> keep_e(static_cast<size_t>(m + k), 1);
    for (int i = 0; i < k; ++i)
        if (b.in_a[i]) keep_e[m + i] = 0;
    b.h_prime = restrict_embedding(b.dxw, keep_h, keep_e);
    for (int e : b.h.original_edge) b.h_edge_crossing.push_back(e - m);
    for (int e : b.h_prime.original_edge) b.hp_edge_crossing.push_back(e - m);
    return b;
}

/// Adds e_w for every crossing w. With black neighbours x1, x2 of w such that the dart
/// w->x1 follows w->x2 clockwise, e_w is inserted right after x1->w at x1 and right
/// before x2->w at x2, so (x2->w, w->x1, x1->x2) bounds a face.
inline ExtensionBundle extend(const OnePlanarDrawing& d) {
    Bipartition parts = detail::bundle_parts(d);
    const PlaneEmbedding& p = d.planarization();
    const int n = d.graph_vertex_count();
    auto black = [&](Vertex v) { return v < n && parts.in_x(v); };
    std::vector<EdgeInsertion> ins;
    std::vector<Edge> ends;
    for (int i = 0; i < d.crossing_count(); ++i) {
        const Vertex w = n + i;
        const auto& rot = p.rotation(w);
        int at = -1;
        for (int q = 0; q < 4; ++q)
            if (black(p.head(rot[q])) && black(p.head(rot[(q + 1) % 4]))) at = q;
        if (at < 0) throw StructuralError("crossing " + std::to_string(w) + " lacks two consecutive black neighbours");
        Dart to_x2 = rot[at], to_x1 = rot[(at + 1) % 4];
        ins.push_back({twin(to_x1), twin(to_x2)});
        ends.emplace_back(p.head(to_x1), p.head(to_x2));
    }
    return build_bundle(d, insert_edges(p, ins), std::move(ends));
}

/// Report of one checker: PASS / FAIL lines with witnesses, or SKIP when the
/// checker's hypothesis does not hold.
struct CheckReport {
    std::string name;
    bool hypothesis_met = true;
    std::string hypothesis_failure;
    int checked = 0;
    std::vector<std::string> violations;
    std::vector<std::string> notes;

    bool passed() const { return hypothesis_met && violations.empty(); }
    std::vector<std::string> lines() const {
        std::vector<std::string> out;
        if (!hypothesis_met) {
            out.push_back("SKIP " + name + " hypothesis: " + hypothesis_failure);
            return out;
        }
        if (violations.empty()) out.push_back("PASS " + name + " checked=" + std::to_string(checked));
        for (const auto& v : violations) out.push_back("FAIL " + name + " " + v);
        for (const auto& note : notes) out.push_back("NOTE " + name + " " + note);
        return out;
    }
};

/// Which side of a cycle each face of a plane graph lies on. Side 0 holds the
/// unbounded face.
struct CycleSides {
    std::vector<int> side_of_face;

    int side_of_vertex(const PlaneEmbedding& emb, const FaceStructure& fs, Vertex v) const {
        return side_of_face[fs.some_face_at(emb, v)];
    }
};

inline CycleSides cycle_sides(const PlaneEmbedding& emb, const FaceStructure& fs, std::span<const int> cycle) {
    const int faces = static_cast<int>(fs.faces.size());
    std::vector<char> on_cycle(static_cast<size_t>(emb.edge_count()), 0);
    for (int e : cycle) on_cycle[e] = 1;
    detail::UnionFind uf(faces);
    for (int e = 0; e < emb.edge_count(); ++e)
        if (!on_cycle[e]) uf.unite(fs.face_of_dart[2 * e], fs.face_of_dart[2 * e + 1]);
    CycleSides s;
    s.side_of_face.assign(static_cast<size_t>(faces), -1);
    const int outer_root = uf.find(fs.outer);
    int inner_root = -1;
    for (int f = 0; f < faces; ++f) {
        int r = uf.find(f);
        if (r == outer_root) {
            s.side_of_face[f] = 0;
        } else {
            if (inner_root < 0) inner_root = r;
            if (r != inner_root) throw StructuralError("cycle splits the plane into more than two regions");
            s.side_of_face[f] = 1;
        }
    }
    for (int e : cycle)
        if (s.side_of_face[fs.face_of_dart[2 * e]] == s.side_of_face[fs.face_of_dart[2 * e + 1]])
            throw StructuralError("edge set is not a cycle of the plane graph");
    return s;
}

namespace detail {

struct SideCounts {
    int black[2] = {0, 0};
    int red[2] = {0, 0};
    std::vector<int> red_side;  // crossing index -> side
};

/// Counts black vertices of H strictly on each side of `cycle` (edges of H) and red
/// vertices by their residue face in H.
inline SideCounts count_sides(const ExtensionBundle& b, std::span<const int> cycle) {
    const PlaneEmbedding& h = b.h.sub;
    const FaceStructure& fs = b.h.sub_faces;
    CycleSides sides = cycle_sides(h, fs, cycle);
    std::vector<char> on(static_cast<size_t>(h.vertex_count()), 0);
    for (int e : cycle) on[h.edges()[e].first] = on[h.edges()[e].second] = 1;
    SideCounts c;
    for (Vertex v = 0; v < h.vertex_count(); ++v)
        if (!on[v]) ++c.black[sides.side_of_vertex(h, fs, v)];
    for (int i = 0; i < b.crossing_count(); ++i) {
        int side = sides.side_of_face[b.h.residue[b.red_vertex(i)]];
        c.red_side.push_back(side);
        ++c.red[side];
    }
    return c;
}

inline std::vector<std::pair<int, int>> parallel_pairs(const PlaneEmbedding& h) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < h.edge_count(); ++i)
        for (int j = i + 1; j < h.edge_count(); ++j)
            if (normalized(h.edges()[i]) == normalized(h.edges()[j])) out.emplace_back(i, j);
    return out;
}

inline std::string crossing_text(const ExtensionBundle& b, int crossing) {
    Edge e = b.black_ends[crossing];
    return "e_w(w=" + std::to_string(b.red_vertex(crossing)) + ",{" + std::to_string(e.first) + "," +
           std::to_string(e.second) + "})";
}

/// Every 3-cycle of H: triples of edges on three distinct black vertices.
inline std::vector<std::array<int, 3>> triangles(const PlaneEmbedding& h) {
    std::map<Edge, std::vector<int>> by_ends;
    for (int i = 0; i < h.edge_count(); ++i) by_ends[normalized(h.edges()[i])].push_back(i);
    std::vector<std::array<int, 3>> out;
    const int n = h.vertex_count();
    auto get = [&](int a, int b) -> const std::vector<int>* {
        auto it = by_ends.find(normalized({a, b}));
        return it == by_ends.end() ? nullptr : &it->second;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            auto ab = get(a, b);
            if (!ab) continue;
            for (int c = b + 1; c < n; ++c) {
                auto bc = get(b, c), ac = get(a, c);
                if (!bc || !ac) continue;
                for (int e1 : *ab)
                    for (int e2 : *bc)
                        for (int e3 : *ac) out.push_back({e1, e2, e3});
            }
        }
    return out;
}

}  // namespace detail

/// The 3-cycle (e_w, x1 w, w x2) bounds an empty region of F: one of the two faces
/// of F along e_w is a cellular 3-face through w.
inline bool check_empty_triangle(const ExtensionBundle& b, Vertex w) {
    const int i = w - b.drawing.graph_vertex_count();
    if (i < 0 || i >= b.crossing_count()) throw ArgumentError("not a red vertex");
    const Restriction& f = b.f;
    int fe = -1;
    for (int e = 0; e < f.sub.edge_count(); ++e)
        if (f.original_edge[e] == b.ew_of[i]) fe = e;
    if (fe < 0) return false;
    const Vertex fw = f.sub_vertex[w];
    for (int s = 0; s < 2; ++s) {
        const FaceRecord& face = f.sub_faces.faces[f.sub_faces.face_of_dart[2 * fe + s]];
        if (!face.cellular || face.size != 3) continue;
        auto vs = face.vertices(f.sub);
        if (std::count(vs.begin(), vs.end(), fw)) return true;
    }
    return false;
}

/// Parallel pairs of H with black vertices strictly on both sides.
inline std::vector<std::pair<int, int>> find_separating_2cycles(const ExtensionBundle& b) {
    std::vector<std::pair<int, int>> out;
    for (auto [i, j] : detail::parallel_pairs(b.h.sub)) {
        int cyc[2] = {i, j};
        auto c = detail::count_sides(b, cyc);
        if (c.black[0] > 0 && c.black[1] > 0) out.emplace_back(b.h_edge_crossing[i], b.h_edge_crossing[j]);
    }
    return out;
}

namespace detail {
inline bool separating_hypothesis(const ExtensionBundle& b, CheckReport& r) {
    auto sep = find_separating_2cycles(b);
    if (sep.empty()) return true;
    r.hypothesis_met = false;
    r.hypothesis_failure = "H has a separating 2-cycle " + crossing_text(b, sep[0].first) + " " +
                           crossing_text(b, sep[0].second);
    return false;
}
}  // namespace detail

/// Every 2-cycle of H has a side with neither black nor red vertices.
inline CheckReport check_proposition_2(const ExtensionBundle& b) {
    CheckReport r;
    r.name = "prop2";
    if (!detail::separating_hypothesis(b, r)) return r;
    for (auto [i, j] : detail::parallel_pairs(b.h.sub)) {
        int cyc[2] = {i, j};
        auto c = detail::count_sides(b, cyc);
        ++r.checked;
        bool ok = (c.black[0] == 0 && c.red[0] == 0) || (c.black[1] == 0 && c.red[1] == 0);
        if (!ok)
            r.violations.push_back("2-cycle " + detail::crossing_text(b, b.h_edge_crossing[i]) + " " +
                                   detail::crossing_text(b, b.h_edge_crossing[j]) + " has black/red vertices on both sides (" +
                                   std::to_string(c.black[0]) + "/" + std::to_string(c.red[0]) + " vs " +
                                   std::to_string(c.black[1]) + "/" + std::to_string(c.red[1]) +
                                   "): drawing is not crossing-minimal");
    }
    return r;
}

/// Every parallel class of H has at most two edges.
inline CheckReport check_proposition_3(const ExtensionBundle& b) {
    CheckReport r;
    r.name = "prop3";
    if (!detail::separating_hypothesis(b, r)) return r;
    std::map<Edge, int> mult;
    for (const Edge& e : b.h.sub.edges()) ++mult[normalized(e)];
    for (const auto& [e, count] : mult) {
        ++r.checked;
        if (count > 2) {
            Vertex a = b.h.original_vertex[e.first], c = b.h.original_vertex[e.second];
            r.violations.push_back("black pair {" + std::to_string(a) + "," + std::to_string(c) + "} has multiplicity " +
                                   std::to_string(count));
        }
    }
    return r;
}

/// For a 3-cycle C of H with an edge e whose parallel partner is e', the red vertices
/// of e and e' lie on opposite sides of C.
inline CheckReport check_proposition_4(const ExtensionBundle& b) {
    CheckReport r;
    r.name = "prop4";
    if (!detail::separating_hypothesis(b, r)) return r;
    const PlaneEmbedding& h = b.h.sub;
    auto pairs = detail::parallel_pairs(h);
    for (const auto& tri : detail::triangles(h)) {
        std::optional<detail::SideCounts> counts;
        for (int e : tri) {
            for (auto [i, j] : pairs) {
                int partner = i == e ? j : (j == e ? i : -1);
                if (partner < 0) continue;
                if (!counts) counts = detail::count_sides(b, tri);
                ++r.checked;
                int ce = b.h_edge_crossing[e], cp = b.h_edge_crossing[partner];
                if (counts->red_side[ce] == counts->red_side[cp])
                    r.violations.push_back("3-cycle through " + detail::crossing_text(b, ce) + ": its 2-path and that of " +
                                           detail::crossing_text(b, cp) + " lie on the same side");
            }
        }
    }
    return r;
}

/// A 3-cycle of H with r <= 2 red vertices on one side has at least 3 - r simple
/// edges. Both sides are checked; a side holding more than two red vertices is outside
/// the statement and only noted.
inline CheckReport check_proposition_5(const ExtensionBundle& b) {
    CheckReport r;
    r.name = "prop5";
    if (!detail::separating_hypothesis(b, r)) return r;
    const PlaneEmbedding& h = b.h.sub;
    std::map<Edge, int> mult;
    for (const Edge& e : h.edges()) ++mult[normalized(e)];
    int beyond = 0;
    for (const auto& tri : detail::triangles(h)) {
        auto c = detail::count_sides(b, tri);
        int simple = 0;
        for (int e : tri) simple += mult[normalized(h.edges()[e])] == 1;
        for (int side = 0; side < 2; ++side) {
            const int reds = c.red[side];
            if (reds > 2) {
                ++beyond;
                continue;
            }
            ++r.checked;
            if (simple < 3 - reds)
                r.violations.push_back("3-cycle through " + detail::crossing_text(b, b.h_edge_crossing[tri[0]]) +
                                       " has " + std::to_string(reds) + " red vertices on one side but only " +
                                       std::to_string(simple) + " simple edges");
        }
    }
    if (beyond > 0) r.notes.push_back(std::to_string(beyond) + " cycle sides hold more than two red vertices");
    return r;
}

struct TriangleRecord {
    int face = -1;                // face of H'
    std::array<Vertex, 3> corners{};  // black vertices, ids of the drawing
    int interior_white = 0;       // y
    int interior_red = 0;         // j
    int interior_edges = 0;       // e
    bool disc_bound = true;     // e <= 2y + 1 + ceil(sqrt j)
};

struct TriangleClassification {
    std::vector<TriangleRecord> records;
    int t = 0, t0 = 0, t1 = 0, t3 = 0;
    std::vector<int> unexpected;  // indices of records with j not in {0, 1, 3}
};

inline int ceil_sqrt(int j) {
    int r = 0;
    while (r * r < j) ++r;
    return r;
}

/// Cellular 3-faces of H' with the white and red vertices and graph edges inside them.
inline TriangleClassification classify_cellular_3faces(const ExtensionBundle& b) {
    TriangleClassification out;
    const Restriction& hp = b.h_prime;
    const auto& faces = hp.sub_faces.faces;
    const int n = b.drawing.graph_vertex_count();
    const SimpleGraph& g = b.drawing.graph();
    std::vector<int> record_of(faces.size(), -1);
    for (size_t f = 0; f < faces.size(); ++f) {
        if (!faces[f].cellular || faces[f].size != 3) continue;
        TriangleRecord rec;
        rec.face = static_cast<int>(f);
        auto vs = faces[f].vertices(hp.sub);
        if (vs.size() != 3) throw StructuralError("cellular 3-face of H' without three distinct corners");
        for (int i = 0; i < 3; ++i) rec.corners[i] = hp.original_vertex[vs[i]];
        record_of[f] = static_cast<int>(out.records.size());
        out.records.push_back(rec);
    }
    for (Vertex v = 0; v < b.dxw.vertex_count(); ++v) {
        if (hp.sub_vertex[v] >= 0) continue;
        int rec = record_of[hp.residue[v]];
        if (rec < 0) continue;
        if (v >= n) {
            ++out.records[rec].interior_red;
        } else {
            ++out.records[rec].interior_white;
            out.records[rec].interior_edges += g.degree(v);
        }
    }
    for (size_t i = 0; i < out.records.size(); ++i) {
        auto& rec = out.records[i];
        rec.disc_bound = rec.interior_edges <= 2 * rec.interior_white + 1 + ceil_sqrt(rec.interior_red);
        switch (rec.interior_red) {
            case 0: ++out.t0; break;
            case 1: ++out.t1; break;
            case 3: ++out.t3; break;
            default: out.unexpected.push_back(static_cast<int>(i));
        }
    }
    out.t = static_cast<int>(out.records.size());
    return out;
}

}  // namespace onepw
