#pragma once

// Closed-form edge bounds for bipartite 1-planar graphs, the plane-graph inequalities
// behind them, and a certificate that replays the counting argument of the main bound on
// one concrete drawing.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "onepw/drawing.hpp"
#include "onepw/embedding.hpp"
#include "onepw/error.hpp"
#include "onepw/extension.hpp"
#include "onepw/graph.hpp"
#include "onepw/planarity.hpp"

namespace onepw {

using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Karpov: 3n-8 for even n != 6, 3n-9 for odd n and n = 6.
inline long long karpov_bound(long long n) {
    if (n < 4) throw ArgumentError("karpov_bound needs n >= 4");
    return (n % 2 == 0 && n != 6) ? 3 * n - 8 : 3 * n - 9;
}

/// 2n + 6x - 16, for parts 2 <= x <= n - x.
inline long long czap_bound(long long n, long long x) {
    if (x < 2 || n < 2 * x) throw ArgumentError("czap_bound needs 2 <= x and n >= 2x");
    return 2 * n + 6 * x - 16;
}

/// 2n + 4x - 12, for parts 2 <= x <= n - x.
inline long long main_bound(long long n, long long x) {
    if (x < 2 || n < 2 * x) throw ArgumentError("main_bound needs 2 <= x <= n - x");
    return 2 * n + 4 * x - 12;
}

/// Edges that must be removed from K_{x,y} to reach a 1-planar graph: (x-2)(y-6) or 0.
inline long long removal_lower_bound(long long x, long long y) {
    if (x < 2 || y < x) throw ArgumentError("removal_lower_bound needs 2 <= x <= y");
    return std::max(0LL, (x - 2) * (y - 6));
}

/// One checked relation lhs <op> rhs.
struct Inequality {
    std::string name;
    Rational lhs, rhs;
    std::string op = "<=";  // "<=", ">=", "="
    bool skipped = false;
    std::string skip_reason;

    Inequality() = default;
    Inequality(std::string n, Rational l, Rational r, std::string o = "<=")
        : name(std::move(n)), lhs(l), rhs(r), op(std::move(o)) {}

    bool holds() const {
        if (skipped) return true;
        if (op == "<=") return lhs <= rhs;
        if (op == ">=") return lhs >= rhs;
        return lhs == rhs;
    }
    std::string line() const {
        if (skipped) return name + ": SKIP " + skip_reason;
        return name + ": " + to_string(lhs) + op + to_string(rhs) + (holds() ? " PASS" : " FAIL");
    }
};

struct LemmaVerdict {
    int vertices = 0;  // |V| or |V_{>=1}| under the variant
    int edges = 0;
    int components = 0;
    int faces = 0;  // cellular 3-faces, or cellular faces of size >= 6 for the bipartite form
    bool variant = false;
    Inequality inequality;
    bool holds() const { return inequality.holds(); }
};

namespace detail {

struct LemmaCounts {
    int v = 0, e = 0, c = 0, t3 = 0, t6 = 0;
};

inline LemmaCounts lemma_counts(const PlaneEmbedding& emb) {
    LemmaCounts k;
    k.v = emb.vertex_count();
    k.e = emb.edge_count();
    k.c = emb.component_count();
    FaceStructure fs = trace_faces(emb);
    for (const auto& f : fs.faces) {
        if (!f.cellular) continue;
        if (f.size == 3) ++k.t3;
        if (f.size >= 6) ++k.t6;
    }
    return k;
}

/// In the variant, c and t are read off G[V_{>=1}]: on G itself an isolated vertex
/// makes the face around it non-cellular and counts as a component, and the stated
/// inequality fails already for a triangle plus one isolated vertex.
inline LemmaCounts lemma_counts(const PlaneEmbedding& emb, bool variant) {
    if (!variant) {
        if (emb.vertex_count() < 3) throw ArgumentError("the lemma needs at least 3 vertices");
        return lemma_counts(emb);
    }
    std::vector<char> keep_v(static_cast<size_t>(emb.vertex_count()));
    for (Vertex v = 0; v < emb.vertex_count(); ++v) keep_v[v] = emb.degree(v) > 0;
    if (std::count(keep_v.begin(), keep_v.end(), 1) < 3)
        throw ArgumentError("the variant needs at least 3 non-isolated vertices");
    std::vector<char> keep_e(static_cast<size_t>(emb.edge_count()), 1);
    return lemma_counts(restrict_embedding(emb, keep_v, keep_e).sub);
}

inline void require_simple(const PlaneEmbedding& emb) {
    if (has_parallel_edges(emb.edges())) throw ArgumentError("the lemma needs a simple graph");
}

}  // namespace detail

/// |E| <= 2|V| - 3 - c + t/2 with t the cellular 3-faces.
inline LemmaVerdict lemma7_check(const PlaneEmbedding& emb, bool remark_variant = false) {
    detail::require_simple(emb);
    auto k = detail::lemma_counts(emb, remark_variant);
    LemmaVerdict out{k.v, k.e, k.c, k.t3, remark_variant, {}};
    out.inequality = {remark_variant ? "E<=2V-3-c+t/2 on V>=1" : "E<=2V-3-c+t/2", Rational(k.e),
                      Rational(2LL * k.v - 3 - k.c) + Rational(k.t3, 2)};
    return out;
}

/// |E| <= 2|V| - 3 - c - t with t the cellular faces of size at least 6.
inline LemmaVerdict lemma8_check(const PlaneEmbedding& emb, const Bipartition& parts, bool remark_variant = false) {
    detail::require_simple(emb);
    if (parts.vertex_count() != emb.vertex_count()) throw ArgumentError("bipartition size mismatch");
    for (const auto& [a, b] : emb.edges())
        if (parts.in_x(a) == parts.in_x(b)) throw ArgumentError("odd cycle or edge inside one part");
    auto k = detail::lemma_counts(emb, remark_variant);
    LemmaVerdict out{k.v, k.e, k.c, k.t6, remark_variant, {}};
    out.inequality = {remark_variant ? "E<=2V-3-c-t on V>=1" : "E<=2V-3-c-t", Rational(k.e), Rational(2LL * k.v - 3 - k.c - k.t6)};
    return out;
}

inline LemmaVerdict lemma8_check(const PlaneEmbedding& emb, bool remark_variant = false) {
    auto parts = two_colouring(SimpleGraph(emb.vertex_count(), emb.edges()));
    if (!parts) throw ArgumentError("odd cycle present");
    return lemma8_check(emb, *parts, remark_variant);
}

struct TriangleCount {
    int j = 0, y = 0, e = 0;
};

struct Certificate {
    std::string id;
    std::map<std::string, long long> quantities;
    std::vector<TriangleCount> triangles;
    std::vector<std::string> hypothesis_failures;
    std::vector<std::string> notes;
    std::vector<Inequality> checks;

    bool hypotheses_met() const { return hypothesis_failures.empty(); }
    bool passed() const {
        return hypotheses_met() && std::all_of(checks.begin(), checks.end(), [](const Inequality& i) { return i.holds(); });
    }
    long long q(const std::string& key) const { return quantities.at(key); }

    /// key=value block in fixed order, then one line per relation; the main bound last.
    std::string text() const {
        static const char* const order[] = {"V", "E", "x", "y", "W", "E(H)", "E(H')", "A", "t", "t0", "t1", "t3", "m",
                                            "V(G')", "E(G')", "V(G*)", "E(G*)", "V(G**)", "E(G**)"};
        std::ostringstream ss;
        ss << "drawing=" << id << '\n';
        for (const char* key : order)
            if (auto it = quantities.find(key); it != quantities.end()) ss << key << '=' << it->second << '\n';
        for (size_t i = 0; i < triangles.size(); ++i)
            ss << "triangle" << i << "=j:" << triangles[i].j << ",y:" << triangles[i].y << ",e:" << triangles[i].e << '\n';
        for (const auto& h : hypothesis_failures) ss << "hypothesis=FAIL " << h << '\n';
        if (hypothesis_failures.empty()) ss << "hypothesis=PASS\n";
        for (const auto& n : notes) ss << "note=" << n << '\n';
        for (const auto& c : checks) ss << c.line() << '\n';
        return ss.str();
    }
};

namespace detail {

inline bool bipartite_under(const PlaneEmbedding& emb, const std::vector<char>& black) {
    return std::all_of(emb.edges().begin(), emb.edges().end(),
                       [&](const Edge& e) { return black[e.first] != black[e.second]; });
}

inline OnePlanarDrawing with_smaller_part_black(const OnePlanarDrawing& d, const Bipartition& parts) {
    if (parts.x() <= parts.y() && d.parts() && *d.parts() == parts) return d;
    RawDrawing raw = d.raw();
    std::vector<Side> sides = parts.sides();
    if (parts.x() > parts.y())
        for (auto& s : sides) s = s == Side::X ? Side::Y : Side::X;
    std::vector<VertexLabel> labels = raw.planarization.labels();
    for (size_t v = 0; v < sides.size(); ++v) labels[v] = sides[v] == Side::X ? VertexLabel::black : VertexLabel::white;
    raw.planarization = raw.planarization.with_labels(std::move(labels));
    raw.parts = Bipartition(std::move(sides));
    return OnePlanarDrawing(std::move(raw));
}

}  // namespace detail

/// Replays the counting argument on one drawing: builds the extension, classifies the
/// cellular 3-faces of H', materializes G', G* and G** and checks every relation.
/// The smaller part is taken as the black part.
inline Certificate certify(const OnePlanarDrawing& input, const std::string& id = "drawing") {
    Certificate cert;
    cert.id = id;
    std::optional<Bipartition> parts = input.parts();
    if (!parts) parts = two_colouring(input.graph());
    if (!parts) {
        cert.hypothesis_failures.push_back("bipartite: the graph has an odd cycle");
        return cert;
    }
    const OnePlanarDrawing d = detail::with_smaller_part_black(input, *parts);
    const Bipartition& bp = *d.parts();
    const SimpleGraph& g = d.graph();
    const int n = g.vertex_count(), x = bp.x(), y = bp.y();
    auto& q = cert.quantities;
    q["V"] = n;
    q["E"] = g.edge_count();
    q["x"] = x;
    q["y"] = y;
    q["W"] = d.crossing_count();
    if (x < 2) {
        cert.hypothesis_failures.push_back("part sizes: need 2 <= x <= y, got x=" + std::to_string(x));
        return cert;
    }

    ExtensionBundle b = extend(d);
    const int eh = b.h.sub.edge_count(), ehp = b.h_prime.sub.edge_count(), a = b.a_size();
    q["E(H)"] = eh;
    q["E(H')"] = ehp;
    q["A"] = a;

    // hypotheses, in order
    std::map<Edge, int> mult;
    for (const Edge& e : b.black_ends) ++mult[normalized(e)];
    for (const auto& [e, c] : mult)
        if (c > 2) {
            cert.hypothesis_failures.push_back("multiplicity: " + std::to_string(c) + " parallel black edges " +
                                               std::to_string(e.first) + "-" + std::to_string(e.second));
            break;
        }
    if (auto sep = find_separating_2cycles(b); !sep.empty())
        cert.hypothesis_failures.push_back("no separating 2-cycle: H has one through crossings " +
                                           std::to_string(b.red_vertex(sep[0].first)) + " and " +
                                           std::to_string(b.red_vertex(sep[0].second)));
    TriangleClassification tri = classify_cellular_3faces(b);
    if (!tri.unexpected.empty())
        cert.hypothesis_failures.push_back("interior crossings in {0,1,3}: a cellular 3-face of H' holds " +
                                           std::to_string(tri.records[tri.unexpected[0]].interior_red));
    q["t"] = tri.t;
    q["t0"] = tri.t0;
    q["t1"] = tri.t1;
    q["t3"] = tri.t3;
    long long sum_y = 0, sum_e = 0;
    for (const auto& r : tri.records) {
        cert.triangles.push_back({r.interior_red, r.interior_white, r.interior_edges});
        sum_y += r.interior_white;
        sum_e += r.interior_edges;
    }

    // H' edges on the boundary of some cellular 3-face
    const Restriction& hp = b.h_prime;
    std::set<int> triangle_faces;
    for (const auto& r : tri.records) triangle_faces.insert(r.face);
    std::vector<char> on_boundary(static_cast<size_t>(ehp), 0);
    for (int e = 0; e < ehp; ++e)
        for (int s = 0; s < 2; ++s)
            if (triangle_faces.count(hp.sub_faces.face_of_dart[2 * e + s])) on_boundary[e] = 1;
    const int m_bd = static_cast<int>(std::count(on_boundary.begin(), on_boundary.end(), 1));
    q["m"] = m_bd;
    if (!cert.hypotheses_met()) return cert;

    if (x < 4)
        cert.notes.push_back("x<4: the per-claim relations are only guaranteed for |X|>=4 or crossing-minimal drawings");
    const long long t = tri.t, t0 = tri.t0, t1 = tri.t1, t3 = tri.t3;
    auto& ck = cert.checks;
    ck.push_back({"E(H)=E(H')+|A|", Rational(eh), Rational(ehp + a), "="});
    for (size_t i = 0; i < tri.records.size(); ++i) {
        const auto& r = tri.records[i];
        ck.push_back({"triangle" + std::to_string(i) + " e<=2y+1+ceil(sqrt j)", Rational(r.interior_edges),
                      Rational(2LL * r.interior_white + 1 + ceil_sqrt(r.interior_red))});
    }
    ck.push_back({"sum e<=2 sum y+t0+2t1+3t3", Rational(sum_e), Rational(2 * sum_y + t0 + 2 * t1 + 3 * t3)});
    Inequality h_prime_bound{"E(H')<=2x-4+t/2", Rational(ehp), Rational(2LL * x - 4) + Rational(t, 2)};
    if (x < 3) {
        h_prime_bound.skipped = true;
        h_prime_bound.skip_reason = "H' has fewer than 3 vertices";
    }
    ck.push_back(h_prime_bound);
    ck.push_back({"E(H')>=(3t0+2t1)/2", Rational(ehp), Rational(3 * t0 + 2 * t1, 2), ">="});
    ck.push_back({"E(H)<=4x-8+t-(3t0+2t1)/2", Rational(eh), Rational(4LL * x - 8 + t) - Rational(3 * t0 + 2 * t1, 2)});

    // G': delete white and red vertices inside the cellular 3-faces
    const PlaneEmbedding& dxw = b.dxw;
    const int total = dxw.vertex_count();
    std::vector<char> inside(static_cast<size_t>(total), 0);
    for (Vertex v = 0; v < total; ++v)
        if (!b.is_black(v) && hp.residue[v] >= 0 && triangle_faces.count(hp.residue[v])) inside[v] = 1;
    long long vg1 = 0, eg1 = 0;
    for (Vertex v = 0; v < n; ++v) vg1 += !inside[v];
    for (const auto& [u, v] : g.edges()) eg1 += !inside[u] && !inside[v];
    q["V(G')"] = vg1;
    q["E(G')"] = eg1;
    ck.push_back({"V(G')=V-sum y", Rational(vg1), Rational(n - sum_y), "="});
    ck.push_back({"E(G')=E-sum e", Rational(eg1), Rational(g.edge_count() - sum_e), "="});

    // G* with the triangle-boundary black edges still present: drop e1 at each
    // remaining crossing, then smooth the remaining red vertices.
    const PlaneEmbedding& p = d.planarization();
    const int pm = p.edge_count();
    std::vector<char> keep_v(static_cast<size_t>(total), 1), keep_e(static_cast<size_t>(dxw.edge_count()), 1);
    for (Vertex v = 0; v < total; ++v) keep_v[v] = !inside[v];
    std::vector<char> boundary_ew(static_cast<size_t>(b.crossing_count()), 0);
    for (int e = 0; e < ehp; ++e)
        if (on_boundary[e]) boundary_ew[b.hp_edge_crossing[e]] = 1;
    for (int i = 0; i < b.crossing_count(); ++i)
        if (!boundary_ew[i]) keep_e[b.ew_of[i]] = 0;
    std::vector<Vertex> remaining_reds;
    for (const Crossing& c : d.registry()) {
        if (inside[c.w]) continue;
        remaining_reds.push_back(c.w);
        for (Vertex end : {c.e1.first, c.e1.second})
            for (Dart dd : p.darts_between(end, c.w)) keep_e[edge_of(dd)] = 0;
    }
    Restriction r = restrict_embedding(dxw, keep_v, keep_e);
    std::vector<Vertex> smooth;
    for (Vertex w : remaining_reds) smooth.push_back(r.sub_vertex[w]);
    Smoothing sm = smooth_vertices(r.sub, smooth);
    std::vector<char> black_of(static_cast<size_t>(sm.emb.vertex_count()), 0);
    for (int sv = 0; sv < r.sub.vertex_count(); ++sv)
        if (sm.new_vertex[sv] >= 0) black_of[sm.new_vertex[sv]] = b.is_black(r.original_vertex[sv]);
    std::vector<int> boundary_edges;  // in sm.emb
    for (int se = 0; se < r.sub.edge_count(); ++se) {
        int oe = r.original_edge[se];
        if (oe >= pm && sm.new_edge[se] >= 0) boundary_edges.push_back(sm.new_edge[se]);
    }
    std::vector<char> keep_star_e(static_cast<size_t>(sm.emb.edge_count()), 1);
    for (int e : boundary_edges) keep_star_e[e] = 0;
    std::vector<char> all_v(static_cast<size_t>(sm.emb.vertex_count()), 1);
    Restriction star = restrict_embedding(sm.emb, all_v, keep_star_e);
    const PlaneEmbedding& gs = star.sub;
    q["V(G*)"] = gs.vertex_count();
    q["E(G*)"] = gs.edge_count();
    ck.push_back({"E(G*)=E(G')-(E(H)-(t1+3t3))", Rational(gs.edge_count()), Rational(eg1 - (eh - (t1 + 3 * t3))), "="});
    ck.push_back({"V(G*)=V-sum y", Rational(gs.vertex_count()), Rational(n - sum_y), "="});
    std::vector<char> black_star(static_cast<size_t>(gs.vertex_count()));
    for (int v = 0; v < gs.vertex_count(); ++v) black_star[v] = black_of[star.original_vertex[v]];
    const bool star_plane =
        euler_check(gs) && !detail::has_parallel_edges(gs.edges()) && detail::bipartite_under(gs, black_star);
    ck.push_back({"G* simple bipartite plane", Rational(star_plane ? 1 : 0), Rational(1), "="});

    // G**: the boundary edges subdivided by white vertices
    PlaneEmbedding gss = subdivide_edges(sm.emb, boundary_edges, VertexLabel::white);
    std::vector<char> black_ss(black_of);
    black_ss.resize(static_cast<size_t>(gss.vertex_count()), 0);
    q["V(G**)"] = gss.vertex_count();
    q["E(G**)"] = gss.edge_count();
    ck.push_back({"V(G**)=V(G*)+m", Rational(gss.vertex_count()), Rational(gs.vertex_count() + m_bd), "="});
    ck.push_back({"E(G**)=E(G*)+2m", Rational(gss.edge_count()), Rational(gs.edge_count() + 2LL * m_bd), "="});
    const bool ss_plane =
        euler_check(gss) && !detail::has_parallel_edges(gss.edges()) && detail::bipartite_under(gss, black_ss);
    ck.push_back({"G** simple bipartite plane", Rational(ss_plane ? 1 : 0), Rational(1), "="});
    auto counts = detail::lemma_counts(gss);
    ck.push_back({"G** cellular faces of size>=6 >= t", Rational(counts.t6), Rational(t), ">="});
    if (gss.vertex_count() >= 3 && ss_plane) {
        std::vector<Side> sides;
        for (char c : black_ss) sides.push_back(c ? Side::X : Side::Y);
        Inequality l8 = lemma8_check(gss, Bipartition(sides)).inequality;
        l8.name = "E(G**)<=2V(G**)-3-c-t6";
        ck.push_back(l8);
    }
    ck.push_back({"E(G*)<=2V(G*)-4-t", Rational(gs.edge_count()), Rational(2LL * gs.vertex_count() - 4 - t)});
    ck.push_back({"E<=2V+4x-12-t0/2", Rational(g.edge_count()), Rational(2LL * n + 4LL * x - 12) - Rational(t0, 2)});
    return cert;
}

}  // namespace onepw
