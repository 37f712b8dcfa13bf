#pragma once

// Schematic DOT and SVG output. Vertices of each component sit on a circle; positions
// carry no geometric meaning, the rotation system is not reflected in the picture.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "onepw/drawing.hpp"
#include "onepw/embedding.hpp"
#include "onepw/extension.hpp"

namespace onepw {

struct ExportStyle {
    std::string title = "drawing";
    std::vector<std::string> edge_class;  // per edge; empty means "plain"
    std::vector<char> dashed;             // per edge
};

inline ExportStyle drawing_style(const OnePlanarDrawing& d) {
    const auto& p = d.planarization();
    ExportStyle s;
    s.edge_class.assign(static_cast<size_t>(p.edge_count()), "plain");
    s.dashed.assign(static_cast<size_t>(p.edge_count()), 0);
    for (int e = 0; e < p.edge_count(); ++e) {
        auto [a, b] = p.edges()[e];
        if (p.label(a) == VertexLabel::red || p.label(b) == VertexLabel::red) s.edge_class[e] = "crossed";
    }
    return s;
}

/// D×_W: the added black edges are dashed and classed "black", half-edges at crossings "red".
inline ExportStyle bundle_style(const ExtensionBundle& b) {
    ExportStyle s;
    s.title = "extension";
    const auto& p = b.dxw;
    s.edge_class.assign(static_cast<size_t>(p.edge_count()), "plain");
    s.dashed.assign(static_cast<size_t>(p.edge_count()), 0);
    for (int e = 0; e < p.edge_count(); ++e) {
        auto [u, v] = p.edges()[e];
        if (p.label(u) == VertexLabel::red || p.label(v) == VertexLabel::red) s.edge_class[e] = "red";
    }
    for (int e : b.ew_of) {
        s.edge_class[e] = "black";
        s.dashed[e] = 1;
    }
    return s;
}

namespace detail {

inline const char* fill_colour(VertexLabel l) {
    switch (l) {
        case VertexLabel::black: return "black";
        case VertexLabel::white: return "white";
        case VertexLabel::red: return "red";
        default: return "lightgrey";
    }
}

inline std::string edge_class_of(const ExportStyle& s, int e) {
    return e < static_cast<int>(s.edge_class.size()) && !s.edge_class[e].empty() ? s.edge_class[e] : "plain";
}

inline bool dashed_of(const ExportStyle& s, int e) { return e < static_cast<int>(s.dashed.size()) && s.dashed[e]; }

struct Layout {
    std::vector<double> x, y;
    double width = 0, height = 0;
};

inline Layout circular_layout(const PlaneEmbedding& emb) {
    const int n = emb.vertex_count();
    const int c = std::max(1, emb.component_count());
    const auto& comp = emb.component_labels();
    std::vector<std::vector<Vertex>> members(static_cast<size_t>(c));
    for (Vertex v = 0; v < n; ++v) members[comp[v]].push_back(v);
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(c))));
    const double cell = 260, r = 100;
    Layout l;
    l.x.resize(static_cast<size_t>(n));
    l.y.resize(static_cast<size_t>(n));
    for (int i = 0; i < c; ++i) {
        const double cx = cell / 2 + cell * (i % cols), cy = cell / 2 + cell * (i / cols);
        const auto& vs = members[i];
        for (size_t j = 0; j < vs.size(); ++j) {
            const double a = 2 * M_PI * static_cast<double>(j) / static_cast<double>(vs.size());
            l.x[vs[j]] = vs.size() == 1 ? cx : cx + r * std::cos(a);
            l.y[vs[j]] = vs.size() == 1 ? cy : cy + r * std::sin(a);
        }
    }
    l.width = cell * cols;
    l.height = cell * ((c + cols - 1) / cols);
    return l;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '<') out += "&lt;";
        else if (ch == '>') out += "&gt;";
        else if (ch == '&') out += "&amp;";
        else if (ch == '"') out += "&quot;";
        else out += ch;
    }
    return out;
}

}  // namespace detail

inline std::string to_dot(const PlaneEmbedding& emb, const ExportStyle& style = {}) {
    std::ostringstream ss;
    ss << "graph \"" << style.title << "\" {\n  node [shape=circle, style=filled];\n";
    for (Vertex v = 0; v < emb.vertex_count(); ++v) {
        auto l = emb.label(v);
        ss << "  " << v << " [label=\"" << v << "\", class=\"" << to_string(l) << "\", fillcolor=\""
           << detail::fill_colour(l) << "\"" << (l == VertexLabel::black ? ", fontcolor=white" : "") << "];\n";
    }
    for (int e = 0; e < emb.edge_count(); ++e) {
        auto [a, b] = emb.edges()[e];
        ss << "  " << a << " -- " << b << " [class=\"" << detail::edge_class_of(style, e) << "\"";
        if (detail::dashed_of(style, e)) ss << ", style=dashed";
        ss << "];\n";
    }
    ss << "}\n";
    return ss.str();
}

inline std::string to_svg(const PlaneEmbedding& emb, const ExportStyle& style = {}) {
    auto l = detail::circular_layout(emb);
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(1);
    ss << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << l.width << "\" height=\"" << l.height
       << "\" viewBox=\"0 0 " << l.width << ' ' << l.height << "\">\n"
       << "<title>" << detail::xml_escape(style.title) << "</title>\n";
    for (int e = 0; e < emb.edge_count(); ++e) {
        auto [a, b] = emb.edges()[e];
        ss << "<line class=\"" << detail::edge_class_of(style, e) << "\" x1=\"" << l.x[a] << "\" y1=\"" << l.y[a]
           << "\" x2=\"" << l.x[b] << "\" y2=\"" << l.y[b] << "\" stroke=\"" << (detail::edge_class_of(style, e) == "red" ? "red" : "black")
           << "\" stroke-width=\"1.5\"" << (detail::dashed_of(style, e) ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    }
    for (Vertex v = 0; v < emb.vertex_count(); ++v) {
        auto lab = emb.label(v);
        ss << "<circle class=\"" << to_string(lab) << "\" cx=\"" << l.x[v] << "\" cy=\"" << l.y[v]
           << "\" r=\"9\" fill=\"" << detail::fill_colour(lab) << "\" stroke=\"black\"/>\n";
        ss << "<text x=\"" << l.x[v] + 11 << "\" y=\"" << l.y[v] - 11 << "\" font-size=\"11\">" << v << "</text>\n";
    }
    ss << "</svg>\n";
    return ss.str();
}

}  // namespace onepw
