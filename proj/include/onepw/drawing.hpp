#pragma once

// 1-planar drawings, stored as their planarization: every crossing becomes a red
// vertex of degree 4 whose rotation alternates the two crossing edges. Red vertices
// always carry the highest ids, so vertices 0..n-1 are those of the drawn graph.
//
// File format: the embedding format plus one line per crossing,
//   x <w> <a> <b> <c> <d>     edge {a,b} crosses edge {c,d} at red vertex w
// and optional `p` lines for the drawn graph's vertices.

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "onepw/embedding.hpp"
#include "onepw/error.hpp"
#include "onepw/graph.hpp"
#include "onepw/planarity.hpp"
#include "onepw/text_format.hpp"

namespace onepw {

using EdgePair = std::pair<Edge, Edge>;

struct Crossing {
    Vertex w = -1;
    Edge e1;  // {a, b}
    Edge e2;  // {c, d}

    friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Unchecked drawing data, as read from a file or assembled by hand.
struct RawDrawing {
    PlaneEmbedding planarization;
    std::vector<Crossing> registry;
    std::optional<Bipartition> parts;  // over the drawn graph's vertices only

    int graph_vertex_count() const { return planarization.vertex_count() - static_cast<int>(registry.size()); }
};

struct ValidationReport {
    std::vector<std::string> issues;

    bool valid() const noexcept { return issues.empty(); }
    std::string text() const {
        std::string out;
        for (const auto& s : issues) out += s + '\n';
        return out;
    }
};

namespace detail {

struct Recovery {
    std::vector<Edge> edges;  // recovered edges, possibly with duplicates when invalid
};

inline Recovery recover_edges(const RawDrawing& d, ValidationReport& report) {
    const PlaneEmbedding& p = d.planarization;
    const int n = d.graph_vertex_count();
    Recovery r;
    for (const auto& [a, b] : p.edges()) {
        if (a >= n && b >= n) {
            report.issues.push_back("red vertices " + std::to_string(a) + " and " + std::to_string(b) +
                                    " are adjacent: an edge would be crossed twice");
        } else if (a < n && b < n) {
            r.edges.push_back(normalized({a, b}));
        }
    }
    for (const Crossing& c : d.registry) {
        r.edges.push_back(normalized(c.e1));
        r.edges.push_back(normalized(c.e2));
    }
    return r;
}

inline std::string edge_text(Edge e) { return "{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}"; }

}  // namespace detail

inline ValidationReport validate_drawing(const RawDrawing& d) {
    ValidationReport report;
    auto& issues = report.issues;
    const PlaneEmbedding& p = d.planarization;
    const int total = p.vertex_count();
    const int n = d.graph_vertex_count();
    if (n < 0) {
        issues.push_back("registry has more entries than the planarization has vertices");
        return report;
    }

    std::vector<int> entry_of(static_cast<size_t>(total), -1);
    for (size_t i = 0; i < d.registry.size(); ++i) {
        const Crossing& c = d.registry[i];
        const std::string tag = "crossing at " + std::to_string(c.w) + ": ";
        if (c.w < n || c.w >= total) {
            issues.push_back(tag + "red vertices must carry the highest ids");
            continue;
        }
        if (entry_of[c.w] >= 0) {
            issues.push_back(tag + "listed twice");
            continue;
        }
        entry_of[c.w] = static_cast<int>(i);
        bool ends_ok = true;
        for (Vertex v : {c.e1.first, c.e1.second, c.e2.first, c.e2.second})
            if (v < 0 || v >= n) ends_ok = false;
        if (!ends_ok) {
            issues.push_back(tag + "crossing edge endpoint is not a vertex of the drawn graph");
            continue;
        }
        std::set<Vertex> ends{c.e1.first, c.e1.second, c.e2.first, c.e2.second};
        if (ends.size() != 4)
            issues.push_back(tag + "convention violation: crossing edges " + detail::edge_text(c.e1) + " and " +
                             detail::edge_text(c.e2) + " share an endpoint");
        if (p.degree(c.w) != 4) {
            issues.push_back(tag + "degree-4 violation: red vertex has degree " + std::to_string(p.degree(c.w)));
            continue;
        }
        std::vector<Vertex> around;
        for (Dart dd : p.rotation(c.w)) around.push_back(p.head(dd));
        std::vector<Vertex> sorted_around = around;
        std::sort(sorted_around.begin(), sorted_around.end());
        std::vector<Vertex> expect{c.e1.first, c.e1.second, c.e2.first, c.e2.second};
        std::sort(expect.begin(), expect.end());
        if (sorted_around != expect) {
            issues.push_back(tag + "recovery violation: neighbours of the red vertex are not the crossing edges' ends");
            continue;
        }
        auto pos = [&](Vertex v) { return std::find(around.begin(), around.end(), v) - around.begin(); };
        if ((pos(c.e1.first) + 2) % 4 != pos(c.e1.second))
            issues.push_back(tag + "alternation violation: rotation does not alternate " + detail::edge_text(c.e1) +
                             " and " + detail::edge_text(c.e2));
        if (p.label(c.w) != VertexLabel::red) issues.push_back(tag + "label violation: red vertex not labelled red");
    }
    for (Vertex v = n; v < total; ++v)
        if (entry_of[v] < 0) issues.push_back("vertex " + std::to_string(v) + " has a crossing id but no registry entry");
    for (Vertex v = 0; v < n; ++v)
        if (p.label(v) == VertexLabel::red)
            issues.push_back("label violation: vertex " + std::to_string(v) + " is red but not a crossing");

    auto rec = detail::recover_edges(d, report);
    std::vector<Edge> sorted = rec.edges;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            issues.push_back("1-planarity violation: edge " + detail::edge_text(sorted[i]) +
                             " is drawn more than once or crossed more than once");

    if (!euler_check(p)) issues.push_back("Euler violation: the rotation system is not plane");

    if (d.parts) {
        if (d.parts->vertex_count() != n) {
            issues.push_back("bipartition violation: part list does not match the vertex count");
        } else {
            for (const auto& [a, b] : rec.edges)
                if (a < n && b < n && d.parts->part_of(a) == d.parts->part_of(b)) {
                    issues.push_back("bipartition violation: edge " + detail::edge_text({a, b}) + " inside one part");
                    break;
                }
            for (Vertex v = 0; v < n; ++v) {
                VertexLabel want = d.parts->in_x(v) ? VertexLabel::black : VertexLabel::white;
                if (p.label(v) != want) {
                    issues.push_back("label violation: vertex " + std::to_string(v) + " colour disagrees with its part");
                    break;
                }
            }
        }
    }
    return report;
}

/// A drawing that passed validate_drawing. The drawn graph is always re-derived.
class OnePlanarDrawing {
public:
    OnePlanarDrawing() = default;

    explicit OnePlanarDrawing(RawDrawing raw) : raw_(std::move(raw)) {
        auto report = validate_drawing(raw_);
        if (!report.valid()) throw StructuralError("invalid drawing:\n" + report.text());
        std::sort(raw_.registry.begin(), raw_.registry.end(),
                  [](const Crossing& a, const Crossing& b) { return a.w < b.w; });
        auto rec = detail::recover_edges(raw_, report);
        graph_ = SimpleGraph(raw_.graph_vertex_count(), std::move(rec.edges));
    }

    const SimpleGraph& graph() const noexcept { return graph_; }
    const std::optional<Bipartition>& parts() const noexcept { return raw_.parts; }
    const PlaneEmbedding& planarization() const noexcept { return raw_.planarization; }
    const std::vector<Crossing>& registry() const noexcept { return raw_.registry; }
    const Crossing& crossing_at(Vertex w) const { return raw_.registry.at(static_cast<size_t>(w - graph_vertex_count())); }
    const RawDrawing& raw() const noexcept { return raw_; }
    int graph_vertex_count() const noexcept { return graph_.vertex_count(); }
    int crossing_count() const noexcept { return static_cast<int>(raw_.registry.size()); }
    bool is_red(Vertex v) const noexcept { return v >= graph_vertex_count(); }

private:
    RawDrawing raw_;
    SimpleGraph graph_;
};

inline ValidationReport validate_drawing(const OnePlanarDrawing& d) { return validate_drawing(d.raw()); }

inline SimpleGraph recover_graph(const RawDrawing& d) { return OnePlanarDrawing(d).graph(); }
inline const SimpleGraph& recover_graph(const OnePlanarDrawing& d) { return d.graph(); }

namespace detail {

/// Planarization with the alternation gadget: the four stubs of each crossing are
/// subdivided and their subdivision vertices joined by a 4-cycle in alternating order,
/// so any plane embedding has an alternating rotation at the crossing vertex.
///
/// Vertices: graph vertices, one red per pair, then s_a, s_b, s_c, s_d per pair, then
/// the apex when a rim is given. Edges: 8 stub halves per pair, 4 rim edges per pair,
/// uncrossed edges, apex edges.
struct Gadget {
    int vertex_count = 0;
    std::vector<Edge> edges;
    int stub_edges = 0;
    int rim_edges = 0;
    int apex = -1;
};

inline Gadget build_gadget(int n, std::span<const Edge> uncrossed, std::span<const EdgePair> pairs,
                           std::span<const Vertex> rim) {
    Gadget g;
    const int k = static_cast<int>(pairs.size());
    g.vertex_count = n + 5 * k;
    g.edges.reserve(static_cast<size_t>(12 * k) + uncrossed.size() + rim.size());
    for (int i = 0; i < k; ++i) {
        const Vertex w = n + i;
        const Vertex ends[4] = {pairs[i].first.first, pairs[i].first.second, pairs[i].second.first,
                                pairs[i].second.second};
        for (int j = 0; j < 4; ++j) {
            const Vertex s = n + k + 4 * i + j;
            g.edges.emplace_back(ends[j], s);
            g.edges.emplace_back(s, w);
        }
    }
    g.stub_edges = static_cast<int>(g.edges.size());
    for (int i = 0; i < k; ++i) {
        const Vertex s = n + k + 4 * i;  // s+0 = a, s+1 = b, s+2 = c, s+3 = d
        g.edges.emplace_back(s + 0, s + 2);
        g.edges.emplace_back(s + 2, s + 1);
        g.edges.emplace_back(s + 1, s + 3);
        g.edges.emplace_back(s + 3, s + 0);
    }
    g.rim_edges = 4 * k;
    for (const Edge& e : uncrossed) g.edges.push_back(e);
    if (!rim.empty()) {
        g.apex = g.vertex_count++;
        for (Vertex v : rim) g.edges.emplace_back(v, g.apex);
    }
    return g;
}

/// Edges of g not used by any pair, in g's order. Throws if the pairs are malformed.
inline std::vector<Edge> uncrossed_edges(const SimpleGraph& g, std::span<const EdgePair> pairs) {
    std::vector<char> used(static_cast<size_t>(g.edge_count()), 0);
    for (const auto& [e1, e2] : pairs) {
        int i1 = g.edge_index(e1.first, e1.second), i2 = g.edge_index(e2.first, e2.second);
        if (i1 < 0 || i2 < 0) throw ArgumentError("crossing pair names a non-edge");
        if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first || e1.second == e2.second)
            throw ArgumentError("crossing pair edges share an endpoint");
        if (used[i1]++ || used[i2]++) throw ArgumentError("edge used in two crossing pairs");
    }
    std::vector<Edge> out;
    for (int i = 0; i < g.edge_count(); ++i)
        if (!used[i]) out.push_back(g.edge(i));
    return out;
}

}  // namespace detail

/// Builds a drawing of g in which exactly the given pairs cross, or nullopt when no
/// such drawing exists ("pairing rejected"). With a non-empty rim, all rim vertices
/// are placed on the unbounded face.
inline std::optional<OnePlanarDrawing> planarize_from(const SimpleGraph& g, std::span<const EdgePair> pairs,
                                                      const std::optional<Bipartition>& parts = std::nullopt,
                                                      std::span<const Vertex> rim = {}) {
    const int n = g.vertex_count();
    const int k = static_cast<int>(pairs.size());
    std::vector<EdgePair> norm;
    for (const auto& [a, b] : pairs) norm.emplace_back(normalized(a), normalized(b));
    std::vector<Edge> uncrossed = detail::uncrossed_edges(g, norm);
    for (Vertex v : rim)
        if (v < 0 || v >= n) throw ArgumentError("rim vertex out of range");
    if (parts && parts->vertex_count() != n) throw ArgumentError("bipartition size mismatch");

    detail::Gadget gad = detail::build_gadget(n, uncrossed, norm, rim);
    auto rot = planar_rotation(gad.vertex_count, gad.edges);
    if (!rot) return std::nullopt;

    std::vector<VertexLabel> labels(static_cast<size_t>(gad.vertex_count), VertexLabel::plain);
    if (parts)
        for (Vertex v = 0; v < n; ++v) labels[v] = parts->in_x(v) ? VertexLabel::black : VertexLabel::white;
    for (int i = 0; i < k; ++i) labels[n + i] = VertexLabel::red;
    PlaneEmbedding gadget_emb(gad.vertex_count, gad.edges, std::move(*rot), std::move(labels));

    std::vector<char> keep_v(static_cast<size_t>(gad.vertex_count), 1);
    std::vector<char> keep_e(gad.edges.size(), 1);
    for (int e = gad.stub_edges; e < gad.stub_edges + gad.rim_edges; ++e) keep_e[e] = 0;
    int root_face = -1;
    if (gad.apex >= 0) {
        keep_v[gad.apex] = 0;
        root_face = trace_faces(gadget_emb).some_face_at(gadget_emb, gad.apex);
    }
    Restriction r = restrict_embedding(gadget_emb, keep_v, keep_e, root_face);

    std::vector<Vertex> stubs;
    for (int i = 0; i < 4 * k; ++i) stubs.push_back(n + k + i);
    Smoothing sm = smooth_vertices(r.sub, stubs);

    // Orient merged stubs as (graph vertex, red vertex); order is already uncrossed
    // edges followed by a, b, c, d stubs per crossing.
    const PlaneEmbedding& e = sm.emb;
    std::vector<Vertex> id(static_cast<size_t>(e.vertex_count()));
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> from(static_cast<size_t>(e.edge_count()));
    std::iota(from.begin(), from.end(), 0);
    std::vector<char> flip(static_cast<size_t>(e.edge_count()), 0);
    for (int i = 0; i < e.edge_count(); ++i) flip[i] = e.edges()[i].first >= n;
    RawDrawing raw;
    raw.planarization = renumber(e, id, from, flip);
    for (int i = 0; i < k; ++i) raw.registry.push_back({n + i, norm[i].first, norm[i].second});
    raw.parts = parts;
    return OnePlanarDrawing(std::move(raw));
}

inline std::optional<OnePlanarDrawing> planarize_from(const BipartiteGraph& g, std::span<const EdgePair> pairs,
                                                      std::span<const Vertex> rim = {}) {
    return planarize_from(g.graph, pairs, g.parts, rim);
}

inline RawDrawing parse_drawing(std::istream& in) {
    RawGraphText raw = read_raw(in);
    std::vector<Crossing> registry;
    for (const Record& r : raw.other) {
        if (r.tag != "x") throw ParseError(r.line, "unknown record '" + r.tag + "'");
        r.expect_fields(5);
    }
    const int total = raw.vertex_count;
    const int n = total - static_cast<int>(raw.other.size());
    if (n < 0) throw ParseError(raw.last_line, "more crossings than vertices");
    std::vector<char> seen(static_cast<size_t>(total), 0);
    for (const Record& r : raw.other) {
        Crossing c;
        c.w = r.id(0, total);
        if (c.w < n) throw ParseError(r.line, "crossing vertices must carry the highest ids");
        if (seen[c.w]++) throw ParseError(r.line, "crossing vertex listed twice");
        c.e1 = {r.id(1, n), r.id(2, n)};
        c.e2 = {r.id(3, n), r.id(4, n)};
        registry.push_back(c);
    }
    for (const auto& [v, side] : raw.parts)
        if (v >= n) throw ParseError(raw.last_line, "crossing vertex " + std::to_string(v) + " has a part");
    RawDrawing d;
    d.parts = parts_from(raw, n, raw.last_line + 1);
    d.planarization = embedding_from_raw(raw);
    std::vector<VertexLabel> labels = d.planarization.labels();
    for (const Crossing& c : registry) labels[c.w] = VertexLabel::red;
    d.planarization = d.planarization.with_labels(std::move(labels));
    std::sort(registry.begin(), registry.end(), [](const Crossing& a, const Crossing& b) { return a.w < b.w; });
    d.registry = std::move(registry);
    return d;
}

inline void write_drawing(std::ostream& out, const RawDrawing& d) {
    write_embedding_body(out, d.planarization, false);
    const int n = d.graph_vertex_count();
    if (d.parts)
        for (Vertex v = 0; v < n; ++v) out << "p " << v << ' ' << (d.parts->in_x(v) ? 'X' : 'Y') << '\n';
    for (const Crossing& c : d.registry)
        out << "x " << c.w << ' ' << c.e1.first << ' ' << c.e1.second << ' ' << c.e2.first << ' ' << c.e2.second
            << '\n';
}

inline void write_drawing(std::ostream& out, const OnePlanarDrawing& d) { write_drawing(out, d.raw()); }

inline std::string to_text(const OnePlanarDrawing& d) {
    std::ostringstream ss;
    write_drawing(ss, d);
    return ss.str();
}

}  // namespace onepw
