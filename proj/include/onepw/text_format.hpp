#pragma once

// Line-oriented text formats.
//
//   v <count>                       vertex count (first record)
//   p <id> X|Y                      part of a vertex (optional)
//   e <u> <v>                       edge; edges are numbered in file order
//   r <vertex> <dart...>            clockwise rotation; dart 2i leaves the first endpoint
//                                   of edge i, dart 2i+1 the second
//   n <comp> <host-comp> <host-face>  component drawn inside a face of another one
//   o <comp> <face>                 local face of a component that points outward
//   l <vertex> black|white|red|plain
//
// '#' starts a comment; blank lines are ignored. Components are numbered by their
// smallest vertex and local faces in order of their smallest dart.

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "onepw/embedding.hpp"
#include "onepw/error.hpp"
#include "onepw/graph.hpp"

namespace onepw {

struct Record {
    int line = 0;
    std::string tag;
    std::vector<std::string> args;

    long long integer(size_t i) const {
        if (i >= args.size()) throw ParseError(line, "record '" + tag + "' needs more fields");
        try {
            size_t used = 0;
            long long value = std::stoll(args[i], &used);
            if (used != args[i].size()) throw std::invalid_argument(args[i]);
            return value;
        } catch (const std::logic_error&) {
            throw ParseError(line, "expected an integer, got '" + args[i] + "'");
        }
    }
    int id(size_t i, int limit) const {
        long long v = integer(i);
        if (v < 0 || v >= limit) throw ParseError(line, "id " + args[i] + " out of range");
        return static_cast<int>(v);
    }
    void expect_fields(size_t n) const {
        if (args.size() != n)
            throw ParseError(line, "record '" + tag + "' expects " + std::to_string(n) + " fields, got " +
                                       std::to_string(args.size()));
    }
};

inline std::vector<Record> read_records(std::istream& in, int* last_line = nullptr) {
    std::vector<Record> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        Record r;
        r.line = line;
        if (!(ss >> r.tag)) continue;
        for (std::string tok; ss >> tok;) r.args.push_back(tok);
        out.push_back(std::move(r));
    }
    if (last_line) *last_line = line;
    return out;
}

/// Fields shared by graph, embedding and drawing files.
struct RawGraphText {
    int vertex_count = -1;
    std::vector<Edge> edges;
    std::vector<int> edge_lines;
    std::map<int, Side> parts;
    std::map<int, std::vector<Dart>> rotations;
    std::map<int, Nesting> nesting;
    std::map<int, VertexLabel> labels;
    std::vector<Record> other;  // records for higher layers (e.g. crossing registry)
    int last_line = 0;
};

inline VertexLabel parse_label(const Record& r, const std::string& s) {
    if (s == "black") return VertexLabel::black;
    if (s == "white") return VertexLabel::white;
    if (s == "red") return VertexLabel::red;
    if (s == "plain") return VertexLabel::plain;
    throw ParseError(r.line, "unknown label '" + s + "'");
}

inline RawGraphText read_raw(std::istream& in) {
    RawGraphText raw;
    auto records = read_records(in, &raw.last_line);
    for (const Record& r : records) {
        if (r.tag == "v") {
            r.expect_fields(1);
            if (raw.vertex_count >= 0) throw ParseError(r.line, "duplicate 'v' record");
            long long n = r.integer(0);
            if (n < 0 || n > 1'000'000) throw ParseError(r.line, "bad vertex count");
            raw.vertex_count = static_cast<int>(n);
            continue;
        }
        if (raw.vertex_count < 0 && (r.tag == "p" || r.tag == "e" || r.tag == "r" || r.tag == "l"))
            throw ParseError(r.line, "'" + r.tag + "' before 'v' record");
        const int n = raw.vertex_count;
        if (r.tag == "p") {
            r.expect_fields(2);
            int v = r.id(0, n);
            if (r.args[1] == "X") raw.parts[v] = Side::X;
            else if (r.args[1] == "Y") raw.parts[v] = Side::Y;
            else throw ParseError(r.line, "part must be X or Y");
        } else if (r.tag == "e") {
            r.expect_fields(2);
            int a = r.id(0, n), b = r.id(1, n);
            if (a == b) throw ParseError(r.line, "loop edge");
            raw.edges.emplace_back(a, b);
            raw.edge_lines.push_back(r.line);
        } else if (r.tag == "r") {
            if (r.args.empty()) throw ParseError(r.line, "rotation needs a vertex");
            int v = r.id(0, n);
            if (raw.rotations.count(v)) throw ParseError(r.line, "duplicate rotation for vertex " + r.args[0]);
            std::vector<Dart> darts;
            for (size_t i = 1; i < r.args.size(); ++i) darts.push_back(static_cast<Dart>(r.integer(i)));
            raw.rotations[v] = std::move(darts);
        } else if (r.tag == "n") {
            r.expect_fields(3);
            auto& nest = raw.nesting[static_cast<int>(r.integer(0))];
            nest.host_component = static_cast<int>(r.integer(1));
            nest.host_face = static_cast<int>(r.integer(2));
        } else if (r.tag == "o") {
            r.expect_fields(2);
            raw.nesting[static_cast<int>(r.integer(0))].outer_face = static_cast<int>(r.integer(1));
        } else if (r.tag == "l") {
            r.expect_fields(2);
            raw.labels[r.id(0, n)] = parse_label(r, r.args[1]);
        } else {
            raw.other.push_back(r);
        }
    }
    if (raw.vertex_count < 0) throw ParseError(raw.last_line + 1, "missing 'v' record");
    return raw;
}

struct GraphText {
    SimpleGraph graph;
    std::optional<Bipartition> parts;
};

inline std::optional<Bipartition> parts_from(const RawGraphText& raw, int vertex_count, int line) {
    if (raw.parts.empty()) return std::nullopt;
    std::vector<Side> sides;
    for (int v = 0; v < vertex_count; ++v) {
        auto it = raw.parts.find(v);
        if (it == raw.parts.end()) throw ParseError(line, "vertex " + std::to_string(v) + " has no part");
        sides.push_back(it->second);
    }
    return Bipartition(std::move(sides));
}

inline GraphText parse_graph(std::istream& in) {
    RawGraphText raw = read_raw(in);
    for (const Record& r : raw.other) throw ParseError(r.line, "unknown record '" + r.tag + "'");
    GraphText out;
    try {
        out.graph = SimpleGraph(raw.vertex_count, raw.edges);
    } catch (const ArgumentError& e) {
        throw ParseError(raw.edge_lines.empty() ? raw.last_line : raw.edge_lines.back(), e.what());
    }
    out.parts = parts_from(raw, raw.vertex_count, raw.last_line + 1);
    if (out.parts && !out.parts->is_valid_for(out.graph))
        throw ParseError(raw.last_line, "edge inside one part");
    return out;
}

inline PlaneEmbedding embedding_from_raw(const RawGraphText& raw) {
    const int n = raw.vertex_count;
    std::vector<std::vector<Dart>> rotation(static_cast<size_t>(n));
    for (const auto& [v, darts] : raw.rotations) rotation[v] = darts;
    std::vector<VertexLabel> labels(static_cast<size_t>(n), VertexLabel::plain);
    for (auto [v, side] : raw.parts) labels[v] = side == Side::X ? VertexLabel::black : VertexLabel::white;
    for (auto [v, l] : raw.labels) labels[v] = l;
    try {
        PlaneEmbedding bare(n, raw.edges, std::move(rotation), std::move(labels));
        if (raw.nesting.empty()) return bare;
        std::vector<Nesting> nesting(static_cast<size_t>(bare.component_count()));
        for (const auto& [c, nest] : raw.nesting) {
            if (c < 0 || c >= bare.component_count()) throw StructuralError("nesting names unknown component");
            nesting[c] = nest;
        }
        return bare.with_nesting(std::move(nesting));
    } catch (const StructuralError& e) {
        throw ParseError(raw.last_line + 1, std::string("incomplete or malformed embedding: ") + e.what());
    }
}

inline PlaneEmbedding parse_embedding(std::istream& in) {
    RawGraphText raw = read_raw(in);
    for (const Record& r : raw.other) throw ParseError(r.line, "unknown record '" + r.tag + "'");
    return embedding_from_raw(raw);
}

inline void write_graph(std::ostream& out, const SimpleGraph& g, const Bipartition* parts = nullptr) {
    out << "v " << g.vertex_count() << '\n';
    if (parts)
        for (int v = 0; v < g.vertex_count(); ++v) out << "p " << v << ' ' << (parts->in_x(v) ? 'X' : 'Y') << '\n';
    for (const auto& [a, b] : g.edges()) out << "e " << a << ' ' << b << '\n';
}

/// Writes v/e/r/l lines plus n/o lines for any non-default nesting. Labels are written
/// only when some vertex is not plain.
inline void write_embedding_body(std::ostream& out, const PlaneEmbedding& emb, bool write_labels = true) {
    out << "v " << emb.vertex_count() << '\n';
    for (const auto& [a, b] : emb.edges()) out << "e " << a << ' ' << b << '\n';
    for (Vertex v = 0; v < emb.vertex_count(); ++v) {
        if (emb.degree(v) == 0) continue;
        out << "r " << v;
        for (Dart d : emb.rotation(v)) out << ' ' << d;
        out << '\n';
    }
    for (int c = 0; c < emb.component_count(); ++c) {
        const Nesting& nc = emb.nesting(c);
        if (!nc.is_root()) out << "n " << c << ' ' << nc.host_component << ' ' << nc.host_face << '\n';
        if (nc.outer_face != 0) out << "o " << c << ' ' << nc.outer_face << '\n';
    }
    if (write_labels)
        for (Vertex v = 0; v < emb.vertex_count(); ++v)
            if (emb.label(v) != VertexLabel::plain) out << "l " << v << ' ' << to_string(emb.label(v)) << '\n';
}

inline std::string to_text(const PlaneEmbedding& emb) {
    std::ostringstream ss;
    write_embedding_body(ss, emb);
    return ss.str();
}

}  // namespace onepw
