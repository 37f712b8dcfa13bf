#pragma once

// Plane multigraphs as rotation systems.
//
// Edge i owns darts 2i (leaving edges[i].first) and 2i+1 (leaving edges[i].second);
// twin(d) = d ^ 1. rotation(v) lists the darts leaving v in clockwise order. Faces are
// traced with next(d) = rot_next(twin(d)).
//
// A disconnected plane graph is a set of per-component spherical embeddings plus a
// nesting forest: each component is either a root (drawn in the unbounded region) or
// drawn inside a face of a host component. Every component also designates the local
// face that points "outward" (towards the unbounded region or the host face); those
// local faces are merged into one global face with the host face.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "onepw/error.hpp"
#include "onepw/graph.hpp"

namespace onepw {

using Dart = int;

constexpr Dart twin(Dart d) noexcept { return d ^ 1; }
constexpr int edge_of(Dart d) noexcept { return d >> 1; }

enum class VertexLabel : std::uint8_t { plain, black, white, red };

inline const char* to_string(VertexLabel l) {
    switch (l) {
        case VertexLabel::black: return "black";
        case VertexLabel::white: return "white";
        case VertexLabel::red: return "red";
        default: return "plain";
    }
}

/// host_component < 0 marks a root component.
struct Nesting {
    int host_component = -1;
    int host_face = -1;
    int outer_face = 0;

    bool is_root() const noexcept { return host_component < 0; }
    friend bool operator==(const Nesting&, const Nesting&) = default;
};

/// A closed boundary walk. An isolated vertex has an empty walk anchored at `isolated`.
struct BoundaryWalk {
    std::vector<Dart> darts;
    Vertex isolated = -1;
    int component = -1;
    int local_face = -1;
};

class PlaneEmbedding {
public:
    PlaneEmbedding() = default;

    /// Throws StructuralError if the rotation is not a permutation whose cycles are
    /// exactly the vertex stars, or if the nesting forest is malformed. Genus is not
    /// checked here; see euler_check().
    PlaneEmbedding(int vertex_count, std::vector<Edge> edges, std::vector<std::vector<Dart>> rotation,
                   std::vector<VertexLabel> labels = {}, std::vector<Nesting> nesting = {})
        : n_(vertex_count), edges_(std::move(edges)), rotation_(std::move(rotation)), labels_(std::move(labels)) {
        if (n_ < 0) throw StructuralError("negative vertex count");
        if (labels_.empty()) labels_.assign(static_cast<size_t>(n_), VertexLabel::plain);
        if (static_cast<int>(labels_.size()) != n_) throw StructuralError("label count mismatch");
        if (static_cast<int>(rotation_.size()) != n_) throw StructuralError("rotation count mismatch");
        for (const auto& [u, v] : edges_) {
            if (u < 0 || v < 0 || u >= n_ || v >= n_) throw StructuralError("edge endpoint out of range");
            if (u == v) throw StructuralError("loops are not supported");
        }
        const int darts = dart_count();
        pos_.assign(static_cast<size_t>(darts), -1);
        for (int v = 0; v < n_; ++v) {
            const auto& rot = rotation_[v];
            for (size_t i = 0; i < rot.size(); ++i) {
                Dart d = rot[i];
                if (d < 0 || d >= darts) throw StructuralError("dart id out of range at vertex " + std::to_string(v));
                if (tail(d) != v)
                    throw StructuralError("dart " + std::to_string(d) + " listed at vertex " + std::to_string(v) +
                                          " but leaves vertex " + std::to_string(tail(d)));
                if (pos_[d] >= 0) throw StructuralError("dart " + std::to_string(d) + " listed twice");
                pos_[d] = static_cast<int>(i);
            }
        }
        for (Dart d = 0; d < darts; ++d)
            if (pos_[d] < 0) throw StructuralError("dart " + std::to_string(d) + " missing from rotation");

        auto [label, count] = connected_components(n_, edges_);
        component_of_ = std::move(label);
        component_count_ = count;
        trace_local_faces();

        if (nesting.empty()) nesting.assign(static_cast<size_t>(component_count_), Nesting{});
        nesting_ = std::move(nesting);
        validate_nesting();
    }

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    int dart_count() const noexcept { return 2 * edge_count(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    Vertex tail(Dart d) const { return (d & 1) ? edges_[edge_of(d)].second : edges_[edge_of(d)].first; }
    Vertex head(Dart d) const { return tail(twin(d)); }
    const std::vector<Dart>& rotation(Vertex v) const { return rotation_.at(static_cast<size_t>(v)); }
    const std::vector<std::vector<Dart>>& rotations() const noexcept { return rotation_; }
    int degree(Vertex v) const { return static_cast<int>(rotation(v).size()); }

    Dart rot_next(Dart d) const {
        const auto& rot = rotation_[tail(d)];
        return rot[(static_cast<size_t>(pos_[d]) + 1) % rot.size()];
    }
    Dart rot_prev(Dart d) const {
        const auto& rot = rotation_[tail(d)];
        return rot[(static_cast<size_t>(pos_[d]) + rot.size() - 1) % rot.size()];
    }
    Dart face_next(Dart d) const { return rot_next(twin(d)); }

    VertexLabel label(Vertex v) const { return labels_.at(static_cast<size_t>(v)); }
    const std::vector<VertexLabel>& labels() const noexcept { return labels_; }

    int component_count() const noexcept { return component_count_; }
    int component_of(Vertex v) const { return component_of_.at(static_cast<size_t>(v)); }
    const std::vector<int>& component_labels() const noexcept { return component_of_; }

    /// Faces traced inside one component, ignoring every other component.
    const std::vector<BoundaryWalk>& local_faces(int component) const {
        return local_faces_.at(static_cast<size_t>(component));
    }
    /// (component, local face) of a dart.
    std::pair<int, int> local_face_of(Dart d) const { return local_face_of_dart_.at(static_cast<size_t>(d)); }

    const Nesting& nesting(int component) const { return nesting_.at(static_cast<size_t>(component)); }
    const std::vector<Nesting>& nestings() const noexcept { return nesting_; }

    Multigraph underlying() const { return Multigraph(n_, edges_); }

    /// Darts leaving u towards v (several for parallel edges), in rotation order.
    std::vector<Dart> darts_between(Vertex u, Vertex v) const {
        std::vector<Dart> out;
        for (Dart d : rotation(u))
            if (head(d) == v) out.push_back(d);
        return out;
    }

    PlaneEmbedding with_labels(std::vector<VertexLabel> labels) const {
        return PlaneEmbedding(n_, edges_, rotation_, std::move(labels), nesting_);
    }
    PlaneEmbedding with_nesting(std::vector<Nesting> nesting) const {
        return PlaneEmbedding(n_, edges_, rotation_, labels_, std::move(nesting));
    }

private:
    void trace_local_faces() {
        local_faces_.assign(static_cast<size_t>(component_count_), {});
        local_face_of_dart_.assign(static_cast<size_t>(dart_count()), {-1, -1});
        // Isolated vertices get a single empty face; everything else is traced in dart order.
        for (Vertex v = 0; v < n_; ++v) {
            if (!rotation_[v].empty()) continue;
            BoundaryWalk w;
            w.isolated = v;
            w.component = component_of_[v];
            w.local_face = 0;
            local_faces_[w.component].push_back(std::move(w));
        }
        for (Dart start = 0; start < dart_count(); ++start) {
            if (local_face_of_dart_[start].first >= 0) continue;
            int c = component_of_[tail(start)];
            int f = static_cast<int>(local_faces_[c].size());
            BoundaryWalk w;
            w.component = c;
            w.local_face = f;
            Dart d = start;
            do {
                if (local_face_of_dart_[d].first >= 0) throw StructuralError("face tracing revisited a dart");
                local_face_of_dart_[d] = {c, f};
                w.darts.push_back(d);
                d = face_next(d);
            } while (d != start);
            local_faces_[c].push_back(std::move(w));
        }
    }

    void validate_nesting() {
        if (static_cast<int>(nesting_.size()) != component_count_)
            throw StructuralError("nesting has " + std::to_string(nesting_.size()) + " entries for " +
                                  std::to_string(component_count_) + " components");
        for (int c = 0; c < component_count_; ++c) {
            const Nesting& nc = nesting_[c];
            const int faces = static_cast<int>(local_faces_[c].size());
            if (nc.outer_face < 0 || nc.outer_face >= faces)
                throw StructuralError("outer face index out of range for component " + std::to_string(c));
            if (nc.is_root()) continue;
            if (nc.host_component >= component_count_ || nc.host_component == c)
                throw StructuralError("bad host component for component " + std::to_string(c));
            const int host_faces = static_cast<int>(local_faces_[nc.host_component].size());
            if (nc.host_face < 0 || nc.host_face >= host_faces)
                throw StructuralError("host face index out of range for component " + std::to_string(c));
        }
        // acyclic: walking up from any component must reach a root
        for (int c = 0; c < component_count_; ++c) {
            int cur = c;
            for (int steps = 0; !nesting_[cur].is_root(); ++steps) {
                if (steps > component_count_) throw StructuralError("nesting forest has a cycle");
                cur = nesting_[cur].host_component;
            }
        }
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Dart>> rotation_;
    std::vector<VertexLabel> labels_;
    std::vector<int> pos_;
    std::vector<int> component_of_;
    int component_count_ = 0;
    std::vector<std::vector<BoundaryWalk>> local_faces_;
    std::vector<std::pair<int, int>> local_face_of_dart_;
    std::vector<Nesting> nesting_;
};

struct FaceRecord {
    std::vector<BoundaryWalk> boundary_walks;
    int size = 0;  // darts on the boundary; an edge seen from both sides counts twice
    bool cellular = false;

    std::vector<Vertex> vertices(const PlaneEmbedding& emb) const {
        std::vector<Vertex> out;
        for (const auto& w : boundary_walks) {
            if (w.isolated >= 0) out.push_back(w.isolated);
            for (Dart d : w.darts) out.push_back(emb.tail(d));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

struct FaceStructure {
    std::vector<FaceRecord> faces;
    std::vector<int> face_of_dart;
    std::vector<std::vector<int>> face_of_local;  // [component][local face]
    int outer = -1;                               // the unbounded face

    int face_of_isolated(const PlaneEmbedding& emb, Vertex v) const {
        return face_of_local[emb.component_of(v)][0];
    }
    /// The face a vertex lies in when it has no edges; for other vertices any incident face.
    int some_face_at(const PlaneEmbedding& emb, Vertex v) const {
        if (emb.degree(v) == 0) return face_of_isolated(emb, v);
        return face_of_dart[emb.rotation(v).front()];
    }
};

/// Global faces: local faces merged along the nesting forest.
inline FaceStructure trace_faces(const PlaneEmbedding& emb) {
    FaceStructure fs;
    const int comps = emb.component_count();
    fs.face_of_local.resize(static_cast<size_t>(comps));
    int first_root = -1;
    for (int c = 0; c < comps; ++c)
        if (emb.nesting(c).is_root()) {
            first_root = c;
            break;
        }
    // Primary local faces open a new global face; outward faces of nested components
    // and of secondary roots are merged afterwards.
    for (int c = 0; c < comps; ++c) {
        const auto& locals = emb.local_faces(c);
        fs.face_of_local[c].assign(locals.size(), -1);
        const Nesting& nc = emb.nesting(c);
        for (int f = 0; f < static_cast<int>(locals.size()); ++f) {
            bool merged = f == nc.outer_face && (!nc.is_root() || c != first_root);
            if (!merged) fs.face_of_local[c][f] = static_cast<int>(fs.faces.size()), fs.faces.emplace_back();
        }
    }
    auto resolve = [&](auto&& self, int c, int f) -> int {
        int& slot = fs.face_of_local[c][f];
        if (slot >= 0) return slot;
        const Nesting& nc = emb.nesting(c);
        if (nc.is_root())
            slot = self(self, first_root, emb.nesting(first_root).outer_face);
        else
            slot = self(self, nc.host_component, nc.host_face);
        return slot;
    };
    for (int c = 0; c < comps; ++c)
        for (int f = 0; f < static_cast<int>(emb.local_faces(c).size()); ++f) resolve(resolve, c, f);

    fs.face_of_dart.assign(static_cast<size_t>(emb.dart_count()), -1);
    for (int c = 0; c < comps; ++c) {
        const auto& locals = emb.local_faces(c);
        for (int f = 0; f < static_cast<int>(locals.size()); ++f) {
            int g = fs.face_of_local[c][f];
            fs.faces[g].boundary_walks.push_back(locals[f]);
            fs.faces[g].size += static_cast<int>(locals[f].darts.size());
            for (Dart d : locals[f].darts) fs.face_of_dart[d] = g;
        }
    }
    for (auto& face : fs.faces) face.cellular = face.boundary_walks.size() == 1;
    if (first_root >= 0) fs.outer = fs.face_of_local[first_root][emb.nesting(first_root).outer_face];
    return fs;
}

/// v - e + f = 2 for every component, with f counted before nesting merges.
inline bool euler_check(const PlaneEmbedding& emb) {
    std::vector<int> v(static_cast<size_t>(emb.component_count()), 0), e(v), f(v);
    for (Vertex x = 0; x < emb.vertex_count(); ++x) ++v[emb.component_of(x)];
    for (const auto& [a, b] : emb.edges()) ++e[emb.component_of(a)];
    for (int c = 0; c < emb.component_count(); ++c) f[c] = static_cast<int>(emb.local_faces(c).size());
    for (int c = 0; c < emb.component_count(); ++c)
        if (v[c] - e[c] + f[c] != 2) return false;
    return true;
}

/// Rebuilds a nesting forest from region classes. `region_of_local[c][f]` names the
/// region (face of the whole plane graph) that local face f of component c belongs to;
/// `root_region` is the unbounded one. Each component is reached through exactly one
/// region, which becomes its outward face.
inline std::vector<Nesting> nesting_from_regions(const PlaneEmbedding& emb,
                                                 const std::vector<std::vector<int>>& region_of_local,
                                                 int root_region) {
    const int comps = emb.component_count();
    std::map<int, std::vector<std::pair<int, int>>> members;
    for (int c = 0; c < comps; ++c)
        for (int f = 0; f < static_cast<int>(region_of_local[c].size()); ++f)
            members[region_of_local[c][f]].emplace_back(c, f);
    std::vector<Nesting> nesting(static_cast<size_t>(comps));
    std::vector<char> placed(static_cast<size_t>(comps), 0);
    std::vector<int> queue;
    auto root_it = members.find(root_region);
    if (comps > 0 && root_it == members.end()) throw StructuralError("unbounded region has no boundary");
    if (comps > 0) {
        for (auto [c, f] : root_it->second) {
            if (placed[c]) throw StructuralError("component touches the unbounded region twice");
            placed[c] = 1;
            nesting[c] = Nesting{-1, -1, f};
            queue.push_back(c);
        }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int c = queue[qi];
        for (int f = 0; f < static_cast<int>(region_of_local[c].size()); ++f) {
            if (f == nesting[c].outer_face) continue;
            for (auto [c2, f2] : members[region_of_local[c][f]]) {
                if (c2 == c && f2 == f) continue;
                if (c2 == c) throw StructuralError("component touches one region twice");
                if (placed[c2]) throw StructuralError("component reached twice while nesting");
                placed[c2] = 1;
                nesting[c2] = Nesting{c, f, f2};
                queue.push_back(c2);
            }
        }
    }
    for (int c = 0; c < comps; ++c)
        if (!placed[c]) throw StructuralError("component " + std::to_string(c) + " is not reachable in nesting");
    return nesting;
}

/// Builds an embedding whose nesting is derived from region classes attached to darts.
/// Darts with class -1 carry no information; a local face containing only such darts
/// becomes a fresh region. Isolated vertices take `isolated_region[v]`.
inline PlaneEmbedding embedding_from_regions(int n, std::vector<Edge> edges, std::vector<std::vector<Dart>> rotation,
                                             std::vector<VertexLabel> labels, std::span<const int> dart_region,
                                             std::span<const int> isolated_region, int root_region) {
    PlaneEmbedding bare(n, std::move(edges), std::move(rotation), std::move(labels));
    int fresh = -2;
    std::vector<std::vector<int>> cls(static_cast<size_t>(bare.component_count()));
    for (int c = 0; c < bare.component_count(); ++c) {
        for (const auto& w : bare.local_faces(c)) {
            int r = -1;
            if (w.isolated >= 0) r = isolated_region[w.isolated];
            for (Dart d : w.darts) {
                int rd = dart_region[d];
                if (rd < 0) continue;
                if (r >= 0 && r != rd) throw StructuralError("one face carries two region classes");
                r = rd;
            }
            if (r < 0) r = fresh--;
            cls[c].push_back(r);
        }
    }
    auto nesting = nesting_from_regions(bare, cls, root_region);
    return bare.with_nesting(std::move(nesting));
}

/// Rotation system of a simple graph given as the clockwise order of neighbours at
/// each vertex. All components become roots with outward face 0.
inline PlaneEmbedding embedding_from_neighbor_orders(int n, const std::vector<Edge>& edges,
                                                     const std::vector<std::vector<Vertex>>& orders,
                                                     std::vector<VertexLabel> labels = {}) {
    if (static_cast<int>(orders.size()) != n) throw ArgumentError("one neighbour order per vertex required");
    std::map<Edge, Dart> dart_of;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [a, b] = edges[e];
        if (!dart_of.emplace(Edge{a, b}, 2 * e).second || !dart_of.emplace(Edge{b, a}, 2 * e + 1).second)
            throw ArgumentError("embedding_from_neighbor_orders needs a simple graph");
    }
    std::vector<std::vector<Dart>> rotation(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        for (Vertex u : orders[v]) {
            auto it = dart_of.find({v, u});
            if (it == dart_of.end()) throw ArgumentError("neighbour order names a non-edge");
            rotation[v].push_back(it->second);
        }
    return PlaneEmbedding(n, edges, std::move(rotation), std::move(labels));
}

/// Result of deleting vertices/edges from a plane embedding.
struct Restriction {
    PlaneEmbedding sub;
    std::vector<Vertex> original_vertex;  // sub vertex -> original vertex
    std::vector<int> original_edge;       // sub edge -> original edge
    std::vector<int> sub_vertex;          // original vertex -> sub vertex or -1
    std::vector<int> residue;             // original vertex -> face of sub containing it (deleted vertices), else -1
    std::vector<int> face_map;            // original global face -> sub global face containing it
    FaceStructure sub_faces;
};

namespace detail {
struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};
}  // namespace detail

/// Deletes every vertex with keep_vertex false (and incident edges) and every edge with
/// keep_edge false. Faces only ever merge under deletion, so region identity is tracked
/// with union-find over the original faces. `root_face` (original global face) selects
/// the unbounded region of the result; by default the original unbounded face is kept.
inline Restriction restrict_embedding(const PlaneEmbedding& emb, std::span<const char> keep_vertex,
                                      std::span<const char> keep_edge, int root_face = -1) {
    const int n = emb.vertex_count();
    const int m = emb.edge_count();
    if (static_cast<int>(keep_vertex.size()) != n || static_cast<int>(keep_edge.size()) != m)
        throw ArgumentError("restrict_embedding: mask size mismatch");
    FaceStructure fs = trace_faces(emb);
    detail::UnionFind uf(static_cast<int>(fs.faces.size()));

    Restriction r;
    r.sub_vertex.assign(static_cast<size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v)
        if (keep_vertex[v]) {
            r.sub_vertex[v] = static_cast<int>(r.original_vertex.size());
            r.original_vertex.push_back(v);
        }
    std::vector<int> new_edge(static_cast<size_t>(m), -1);
    std::vector<Edge> edges;
    for (int e = 0; e < m; ++e) {
        auto [a, b] = emb.edges()[e];
        if (keep_edge[e] && keep_vertex[a] && keep_vertex[b]) {
            new_edge[e] = static_cast<int>(edges.size());
            edges.emplace_back(r.sub_vertex[a], r.sub_vertex[b]);
            r.original_edge.push_back(e);
        } else {
            uf.unite(fs.face_of_dart[2 * e], fs.face_of_dart[2 * e + 1]);
        }
    }
    auto region_at = [&](Vertex v) { return uf.find(fs.some_face_at(emb, v)); };

    const int sn = static_cast<int>(r.original_vertex.size());
    std::vector<std::vector<Dart>> rotation(static_cast<size_t>(sn));
    std::vector<VertexLabel> labels(static_cast<size_t>(sn));
    for (int sv = 0; sv < sn; ++sv) {
        Vertex v = r.original_vertex[sv];
        labels[sv] = emb.label(v);
        for (Dart d : emb.rotation(v)) {
            int ne = new_edge[edge_of(d)];
            if (ne >= 0) rotation[sv].push_back(2 * ne + (d & 1));
        }
    }
    std::vector<int> dart_region(2 * edges.size());
    for (size_t ne = 0; ne < edges.size(); ++ne)
        for (int s = 0; s < 2; ++s) dart_region[2 * ne + s] = uf.find(fs.face_of_dart[2 * r.original_edge[ne] + s]);
    std::vector<int> isolated_region(static_cast<size_t>(sn), -1);
    for (int sv = 0; sv < sn; ++sv) isolated_region[sv] = region_at(r.original_vertex[sv]);

    int root = root_face >= 0 ? root_face : fs.outer;
    int root_region = root >= 0 ? uf.find(root) : -1;
    r.sub = embedding_from_regions(sn, std::move(edges), std::move(rotation), std::move(labels), dart_region,
                                   isolated_region, root_region);
    r.sub_faces = trace_faces(r.sub);

    std::map<int, int> sub_face_of_region;
    for (int c = 0; c < r.sub.component_count(); ++c) {
        const auto& locals = r.sub.local_faces(c);
        for (int f = 0; f < static_cast<int>(locals.size()); ++f) {
            const auto& w = locals[f];
            int reg = w.isolated >= 0 ? isolated_region[w.isolated] : dart_region[w.darts.front()];
            sub_face_of_region[reg] = r.sub_faces.face_of_local[c][f];
        }
    }
    auto lookup = [&](int reg) {
        auto it = sub_face_of_region.find(reg);
        return it == sub_face_of_region.end() ? -1 : it->second;
    };
    r.residue.assign(static_cast<size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v)
        if (!keep_vertex[v]) r.residue[v] = lookup(region_at(v));
    r.face_map.resize(fs.faces.size());
    for (size_t f = 0; f < fs.faces.size(); ++f) r.face_map[f] = lookup(uf.find(static_cast<int>(f)));
    return r;
}

/// Same embedding with a different face declared unbounded.
inline PlaneEmbedding with_outer_face(const PlaneEmbedding& emb, int global_face) {
    std::vector<char> keep_v(static_cast<size_t>(emb.vertex_count()), 1);
    std::vector<char> keep_e(static_cast<size_t>(emb.edge_count()), 1);
    return restrict_embedding(emb, keep_v, keep_e, global_face).sub;
}


/// Same plane graph under new vertex ids and a new edge order: edge i of the result is
/// old edge edge_from[i], reversed when flip[i] is set. Faces and nesting are kept.
inline PlaneEmbedding renumber(const PlaneEmbedding& emb, std::span<const Vertex> new_id,
                               std::span<const int> edge_from, std::span<const char> flip) {
    const int n = emb.vertex_count(), m = emb.edge_count();
    if (static_cast<int>(new_id.size()) != n || static_cast<int>(edge_from.size()) != m ||
        static_cast<int>(flip.size()) != m)
        throw ArgumentError("renumber: size mismatch");
    std::vector<int> seen_v(static_cast<size_t>(n), 0), seen_e(static_cast<size_t>(m), 0);
    for (Vertex v : new_id) {
        if (v < 0 || v >= n || seen_v[v]++) throw ArgumentError("renumber: vertex map is not a permutation");
    }
    for (int e : edge_from) {
        if (e < 0 || e >= m || seen_e[e]++) throw ArgumentError("renumber: edge map is not a permutation");
    }
    std::vector<Dart> new_dart(static_cast<size_t>(2 * m));
    std::vector<Edge> edges(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        auto [a, b] = emb.edges()[edge_from[i]];
        edges[i] = flip[i] ? Edge{new_id[b], new_id[a]} : Edge{new_id[a], new_id[b]};
        for (int s = 0; s < 2; ++s) new_dart[2 * edge_from[i] + (s ^ (flip[i] ? 1 : 0))] = 2 * i + s;
    }
    FaceStructure fs = trace_faces(emb);
    std::vector<std::vector<Dart>> rotation(static_cast<size_t>(n));
    std::vector<VertexLabel> labels(static_cast<size_t>(n));
    std::vector<int> isolated(static_cast<size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v) {
        for (Dart d : emb.rotation(v)) rotation[new_id[v]].push_back(new_dart[d]);
        labels[new_id[v]] = emb.label(v);
        if (emb.degree(v) == 0) isolated[new_id[v]] = fs.face_of_isolated(emb, v);
    }
    std::vector<int> region(static_cast<size_t>(2 * m));
    for (Dart d = 0; d < 2 * m; ++d) region[new_dart[d]] = fs.face_of_dart[d];
    return embedding_from_regions(n, std::move(edges), std::move(rotation), std::move(labels), region, isolated,
                                  fs.outer);
}

struct Smoothing {
    PlaneEmbedding emb;
    std::vector<int> new_vertex;  // old vertex -> new vertex, -1 for smoothed ones
    std::vector<int> new_edge;    // old edge -> new edge, -1 for edges at smoothed vertices
    std::vector<int> merged;      // i-th smoothed vertex -> the edge replacing its path
};

/// Replaces each path p - v - q through a listed degree-2 vertex v by an edge p - q.
/// Surviving vertices and edges keep their relative order; merged edges are appended
/// in the order of `vs`, oriented from the head of v's first rotation dart.
inline Smoothing smooth_vertices(const PlaneEmbedding& emb, std::span<const Vertex> vs) {
    const int n = emb.vertex_count(), m = emb.edge_count();
    std::vector<int> slot(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < vs.size(); ++i) {
        Vertex v = vs[i];
        if (v < 0 || v >= n || slot[v] >= 0) throw ArgumentError("smooth_vertices: bad or repeated vertex");
        if (emb.degree(v) != 2) throw ArgumentError("smooth_vertices: vertex " + std::to_string(v) + " has degree " +
                                                    std::to_string(emb.degree(v)));
        slot[v] = static_cast<int>(i);
    }
    for (Vertex v : vs) {
        Vertex p = emb.head(emb.rotation(v)[0]), q = emb.head(emb.rotation(v)[1]);
        if (slot[p] >= 0 || slot[q] >= 0) throw ArgumentError("smooth_vertices: adjacent smoothed vertices");
        if (p == q) throw ArgumentError("smooth_vertices: smoothing would create a loop");
    }
    Smoothing out;
    out.new_vertex.assign(static_cast<size_t>(n), -1);
    int sn = 0;
    for (Vertex v = 0; v < n; ++v)
        if (slot[v] < 0) out.new_vertex[v] = sn++;
    out.new_edge.assign(static_cast<size_t>(m), -1);
    std::vector<Edge> edges;
    std::vector<int> region;
    FaceStructure fs = trace_faces(emb);
    for (int e = 0; e < m; ++e) {
        auto [a, b] = emb.edges()[e];
        if (slot[a] >= 0 || slot[b] >= 0) continue;
        out.new_edge[e] = static_cast<int>(edges.size());
        edges.emplace_back(out.new_vertex[a], out.new_vertex[b]);
        region.push_back(fs.face_of_dart[2 * e]);
        region.push_back(fs.face_of_dart[2 * e + 1]);
    }
    std::vector<Dart> replace(static_cast<size_t>(2 * m), -1);  // old dart p->v -> new dart p->q
    for (size_t i = 0; i < vs.size(); ++i) {
        Dart d1 = emb.rotation(vs[i])[0], d2 = emb.rotation(vs[i])[1];
        int k = static_cast<int>(edges.size());
        out.merged.push_back(k);
        edges.emplace_back(out.new_vertex[emb.head(d1)], out.new_vertex[emb.head(d2)]);
        replace[twin(d1)] = 2 * k;
        replace[twin(d2)] = 2 * k + 1;
        region.push_back(fs.face_of_dart[twin(d1)]);
        region.push_back(fs.face_of_dart[twin(d2)]);
    }
    std::vector<std::vector<Dart>> rotation(static_cast<size_t>(sn));
    std::vector<VertexLabel> labels(static_cast<size_t>(sn));
    std::vector<int> isolated(static_cast<size_t>(sn), -1);
    for (Vertex v = 0; v < n; ++v) {
        int nv = out.new_vertex[v];
        if (nv < 0) continue;
        labels[nv] = emb.label(v);
        if (emb.degree(v) == 0) isolated[nv] = fs.face_of_isolated(emb, v);
        for (Dart d : emb.rotation(v)) {
            int ne = out.new_edge[edge_of(d)];
            rotation[nv].push_back(ne >= 0 ? 2 * ne + (d & 1) : replace[d]);
        }
    }
    out.emb = embedding_from_regions(sn, std::move(edges), std::move(rotation), std::move(labels), region, isolated,
                                     fs.outer);
    return out;
}

/// Subdivides each listed edge with a new vertex. For the j-th listed edge e = (a, b),
/// vertex n + j is added, e becomes (a, n + j) and edge m + j = (n + j, b) is appended.
inline PlaneEmbedding subdivide_edges(const PlaneEmbedding& emb, std::span<const int> which, VertexLabel label) {
    const int n = emb.vertex_count(), m = emb.edge_count();
    const int k = static_cast<int>(which.size());
    std::vector<Edge> edges = emb.edges();
    std::vector<std::vector<Dart>> rotation = emb.rotations();
    std::vector<VertexLabel> labels = emb.labels();
    FaceStructure fs = trace_faces(emb);
    std::vector<int> region(static_cast<size_t>(2 * (m + k)));
    for (Dart d = 0; d < 2 * m; ++d) region[d] = fs.face_of_dart[d];
    std::vector<int> isolated(static_cast<size_t>(n + k), -1);
    for (Vertex v = 0; v < n; ++v)
        if (emb.degree(v) == 0) isolated[v] = fs.face_of_isolated(emb, v);
    std::vector<char> done(static_cast<size_t>(m), 0);
    for (int j = 0; j < k; ++j) {
        int e = which[j];
        if (e < 0 || e >= m || done[e]++) throw ArgumentError("subdivide_edges: bad or repeated edge");
        Vertex s = n + j, b = edges[e].second;
        int f = m + j;
        edges[e].second = s;
        edges.emplace_back(s, b);
        for (Dart& d : rotation[b])
            if (d == 2 * e + 1) d = 2 * f + 1;
        rotation.push_back({2 * e + 1, 2 * f});
        labels.push_back(label);
        region[2 * f] = fs.face_of_dart[2 * e];
        region[2 * f + 1] = fs.face_of_dart[2 * e + 1];
    }
    return embedding_from_regions(n + k, std::move(edges), std::move(rotation), std::move(labels), region, isolated,
                                  fs.outer);
}

/// New edge from tail(after) to tail(before), placed immediately after `after` in the
/// clockwise rotation at its tail and immediately before `before` at the other end.
struct EdgeInsertion {
    Dart after;
    Dart before;
};

/// Inserts edges inside faces (both ends must lie in one component). The face on the
/// side of the new dart tail(after) -> tail(before) is treated as newly created; the
/// other side inherits whatever was nested in the original face.
inline PlaneEmbedding insert_edges(const PlaneEmbedding& emb, std::span<const EdgeInsertion> insertions) {
    const int n = emb.vertex_count(), m = emb.edge_count();
    const int k = static_cast<int>(insertions.size());
    std::vector<Edge> edges = emb.edges();
    std::vector<std::vector<Dart>> rotation = emb.rotations();
    for (int j = 0; j < k; ++j) {
        const auto& ins = insertions[j];
        if (ins.after < 0 || ins.after >= 2 * m || ins.before < 0 || ins.before >= 2 * m)
            throw ArgumentError("insert_edges: dart out of range");
        Vertex u = emb.tail(ins.after), v = emb.tail(ins.before);
        if (u == v) throw ArgumentError("insert_edges: loop");
        if (emb.component_of(u) != emb.component_of(v)) throw ArgumentError("insert_edges: ends in different components");
        const int e = m + j;
        edges.emplace_back(u, v);
        auto& ru = rotation[u];
        ru.insert(std::find(ru.begin(), ru.end(), ins.after) + 1, 2 * e);
        auto& rv = rotation[v];
        rv.insert(std::find(rv.begin(), rv.end(), ins.before), 2 * e + 1);
    }
    FaceStructure fs = trace_faces(emb);
    PlaneEmbedding bare(n, edges, rotation, emb.labels());
    std::vector<int> region(static_cast<size_t>(2 * (m + k)), -1);
    for (Dart d = 0; d < 2 * m; ++d) region[d] = fs.face_of_dart[d];
    // Within a component, each original face keeps its class on exactly one piece,
    // preferring a piece that is not on the fresh side of any new edge.
    std::set<std::pair<int, int>> fresh;
    for (int j = 0; j < k; ++j) fresh.insert(bare.local_face_of(2 * (m + j)));
    std::map<std::pair<int, int>, int> keeper;  // (component, original face) -> local face
    for (int c = 0; c < bare.component_count(); ++c)
        for (int f = 0; f < static_cast<int>(bare.local_faces(c).size()); ++f) {
            int r = -1;
            for (Dart d : bare.local_faces(c)[f].darts)
                if (d < 2 * m) r = fs.face_of_dart[d];
            if (r < 0) continue;
            auto it = keeper.find({c, r});
            if (it == keeper.end() || (fresh.count({c, it->second}) && !fresh.count({c, f}))) keeper[{c, r}] = f;
        }
    std::set<std::pair<int, int>> kept;
    for (const auto& [cr, f] : keeper) kept.insert({cr.first, f});
    for (int c = 0; c < bare.component_count(); ++c)
        for (int f = 0; f < static_cast<int>(bare.local_faces(c).size()); ++f)
            if (!kept.count({c, f}))
                for (Dart d : bare.local_faces(c)[f].darts) region[d] = -1;
    std::vector<int> isolated(static_cast<size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v)
        if (emb.degree(v) == 0) isolated[v] = fs.face_of_isolated(emb, v);
    return embedding_from_regions(n, std::move(edges), std::move(rotation), emb.labels(), region, isolated, fs.outer);
}

}  // namespace onepw
