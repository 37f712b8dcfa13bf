#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "onepw/error.hpp"

namespace onepw {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline Edge normalized(Edge e) { return e.first <= e.second ? e : Edge{e.second, e.first}; }

/// Loop-free graph without parallel edges. Edges are stored normalized (u < v)
/// and sorted, so the edge index of {u,v} is stable for a given edge set.
class SimpleGraph {
public:
    SimpleGraph() = default;

    explicit SimpleGraph(int vertex_count) : n_(vertex_count), adj_(static_cast<size_t>(vertex_count)) {
        if (vertex_count < 0) throw ArgumentError("negative vertex count");
    }

    SimpleGraph(int vertex_count, std::vector<Edge> edges) : SimpleGraph(vertex_count) {
        for (auto& e : edges) {
            if (e.first < 0 || e.second < 0 || e.first >= n_ || e.second >= n_)
                throw ArgumentError("edge endpoint out of range");
            if (e.first == e.second) throw ArgumentError("loop at vertex " + std::to_string(e.first));
            e = normalized(e);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw ArgumentError("duplicate edge");
        edges_ = std::move(edges);
        for (const auto& [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(int i) const { return edges_.at(static_cast<size_t>(i)); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    /// Index of edge {u,v} in edges(), or -1.
    int edge_index(Vertex u, Vertex v) const {
        Edge key = normalized({u, v});
        auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
        if (it == edges_.end() || *it != key) return -1;
        return static_cast<int>(it - edges_.begin());
    }
    bool has_edge(Vertex u, Vertex v) const { return edge_index(u, v) >= 0; }

    friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

/// Loop-free multigraph; edge order is preserved and edge i keeps its index.
class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int vertex_count) : n_(vertex_count) {
        if (vertex_count < 0) throw ArgumentError("negative vertex count");
    }
    Multigraph(int vertex_count, std::vector<Edge> edges) : Multigraph(vertex_count) {
        for (const auto& e : edges) add_edge(e.first, e.second);
    }
    explicit Multigraph(const SimpleGraph& g) : Multigraph(g.vertex_count(), g.edges()) {}

    int add_vertex() { return n_++; }
    int add_edge(Vertex u, Vertex v) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ArgumentError("edge endpoint out of range");
        if (u == v) throw ArgumentError("loops are not supported");
        edges_.emplace_back(u, v);
        return static_cast<int>(edges_.size()) - 1;
    }

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<size_t>(n_), 0);
        for (const auto& [u, v] : edges_) {
            ++d[u];
            ++d[v];
        }
        return d;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

enum class Side : std::uint8_t { X, Y };

/// Two-colouring of a graph into parts X (black) and Y (white).
class Bipartition {
public:
    Bipartition() = default;
    explicit Bipartition(std::vector<Side> part_of) : part_(std::move(part_of)) {}

    Side part_of(Vertex v) const { return part_.at(static_cast<size_t>(v)); }
    bool in_x(Vertex v) const { return part_of(v) == Side::X; }
    int vertex_count() const noexcept { return static_cast<int>(part_.size()); }
    int x() const { return static_cast<int>(std::count(part_.begin(), part_.end(), Side::X)); }
    int y() const { return vertex_count() - x(); }
    const std::vector<Side>& sides() const noexcept { return part_; }

    std::vector<Vertex> members(Side s) const {
        std::vector<Vertex> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (part_[v] == s) out.push_back(v);
        return out;
    }

    bool is_valid_for(const SimpleGraph& g) const {
        if (vertex_count() != g.vertex_count()) return false;
        return std::all_of(g.edges().begin(), g.edges().end(),
                           [&](const Edge& e) { return part_[e.first] != part_[e.second]; });
    }

    /// Throws unless this is a proper bipartition of g with 2 <= x <= y when required.
    void require_valid_for(const SimpleGraph& g, bool require_ordered_sizes = false) const {
        if (!is_valid_for(g)) throw ArgumentError("bipartition does not match graph");
        if (require_ordered_sizes && !(2 <= x() && x() <= y()))
            throw ArgumentError("part sizes must satisfy 2 <= x <= y");
    }

    friend bool operator==(const Bipartition&, const Bipartition&) = default;

private:
    std::vector<Side> part_;
};

struct BipartiteGraph {
    SimpleGraph graph;
    Bipartition parts;
};

/// K_{x,y} with X = {0..x-1} and Y = {x..x+y-1}.
inline BipartiteGraph complete_bipartite(int x, int y) {
    if (x < 1 || y < 1) throw ArgumentError("complete_bipartite needs positive part sizes");
    std::vector<Edge> edges;
    for (int a = 0; a < x; ++a)
        for (int b = 0; b < y; ++b) edges.emplace_back(a, x + b);
    std::vector<Side> sides(static_cast<size_t>(x), Side::X);
    sides.resize(static_cast<size_t>(x + y), Side::Y);
    return {SimpleGraph(x + y, std::move(edges)), Bipartition(std::move(sides))};
}

struct InducedSubgraph {
    SimpleGraph graph;
    std::vector<Vertex> original;  // new id -> old id (ascending)
};

inline InducedSubgraph induced_subgraph(const SimpleGraph& g, std::span<const Vertex> keep) {
    std::vector<int> new_id(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<Vertex> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        Vertex v = sorted[i];
        if (v < 0 || v >= g.vertex_count()) throw ArgumentError("vertex id out of range");
        new_id[v] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (new_id[u] >= 0 && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
    return {SimpleGraph(static_cast<int>(sorted.size()), std::move(edges)), std::move(sorted)};
}

/// Some proper 2-colouring, or nullopt if g has an odd cycle. Each component's
/// smallest vertex is put in X.
inline std::optional<Bipartition> two_colouring(const SimpleGraph& g) {
    std::vector<int> colour(static_cast<size_t>(g.vertex_count()), -1);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors(u)) {
                if (colour[v] < 0) {
                    colour[v] = 1 - colour[u];
                    q.push(v);
                } else if (colour[v] == colour[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<Side> sides;
    for (int c : colour) sides.push_back(c == 0 ? Side::X : Side::Y);
    return Bipartition(std::move(sides));
}

/// Component label per vertex (labels numbered by smallest member) and component count.
inline std::pair<std::vector<int>, int> connected_components(int n, std::span<const Edge> edges) {
    std::vector<int> parent(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& [u, v] : edges) {
        int a = find(u), b = find(v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> label(static_cast<size_t>(n), -1);
    int count = 0;
    for (int v = 0; v < n; ++v) {
        int r = find(v);
        if (label[r] < 0) label[r] = count++;
        label[v] = label[r];
    }
    return {std::move(label), count};
}

}  // namespace onepw
