#pragma once

// Colour-preserving automorphisms and canonical keys of small graphs, by backtracking.
// Inputs are tiny (at most a few dozen vertices), so no refinement beyond colour and
// degree classes is attempted.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "onepw/error.hpp"
#include "onepw/graph.hpp"

namespace onepw {

using Permutation = std::vector<int>;

namespace detail {

inline std::vector<std::vector<char>> adjacency_matrix(const SimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<char>> adj(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
    for (const auto& [a, b] : g.edges()) adj[a][b] = adj[b][a] = 1;
    return adj;
}

}  // namespace detail

/// Every vertex permutation p with colour[p[v]] == colour[v] that maps edges to edges.
/// Stops after `limit` permutations (identity first).
inline std::vector<Permutation> automorphisms(const SimpleGraph& g, std::span<const int> colour,
                                              size_t limit = 5'000'000) {
    const int n = g.vertex_count();
    if (static_cast<int>(colour.size()) != n) throw ArgumentError("automorphisms: one colour per vertex required");
    auto adj = detail::adjacency_matrix(g);
    std::vector<Permutation> out;
    Permutation p(static_cast<size_t>(n), -1);
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::function<void(int)> rec = [&](int v) {
        if (out.size() >= limit) return;
        if (v == n) {
            out.push_back(p);
            return;
        }
        // identity-first order: try v itself before the others
        for (int step = 0; step < n; ++step) {
            const int u = (v + step) % n;
            if (used[u] || colour[u] != colour[v] || g.degree(u) != g.degree(v)) continue;
            bool ok = true;
            for (int w = 0; w < v && ok; ++w) ok = adj[v][w] == adj[u][p[w]];
            if (!ok) continue;
            p[v] = u;
            used[u] = 1;
            rec(v + 1);
            used[u] = 0;
            p[v] = -1;
        }
    };
    rec(0);
    return out;
}

/// Colouring used by the searches: part (0/1, or 0 without parts) plus 2 for rim vertices.
inline std::vector<int> search_colouring(int n, const Bipartition* parts, std::span<const Vertex> rim) {
    std::vector<int> c(static_cast<size_t>(n), 0);
    if (parts)
        for (Vertex v = 0; v < n; ++v) c[v] = parts->in_x(v) ? 0 : 1;
    for (Vertex v : rim) c[v] += 2;
    return c;
}

/// A canonical key: equal for two coloured graphs iff they are isomorphic by a
/// colour-preserving map. Computed as the smallest relabelled edge list over all
/// labellings that sort vertices by (colour, degree). Returns an empty string when that
/// set of labellings exceeds `max_labellings`.
inline std::string canonical_key(const SimpleGraph& g, std::span<const int> colour,
                                 long long max_labellings = 2'000'000) {
    const int n = g.vertex_count();
    std::vector<int> order(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) order[v] = v;
    auto cls = [&](int v) { return std::pair{colour[v], -g.degree(v)}; };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cls(a) < cls(b); });
    // cells of equal class; labels inside a cell are permuted
    std::vector<std::pair<int, int>> cells;
    long long total = 1;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && cls(order[j]) == cls(order[i])) ++j;
        cells.emplace_back(i, j);
        for (int f = 2; f <= j - i; ++f) {
            total *= f;
            if (total > max_labellings) return {};
        }
        i = j;
    }
    std::vector<int> label(static_cast<size_t>(n));
    std::vector<Edge> best, cur;
    cur.reserve(g.edges().size());
    auto evaluate = [&] {
        for (int i = 0; i < n; ++i) label[order[i]] = i;
        cur.clear();
        for (const auto& [a, b] : g.edges()) cur.push_back(normalized({label[a], label[b]}));
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) best = cur;
    };
    std::function<void(size_t)> rec = [&](size_t c) {
        if (c == cells.size()) {
            evaluate();
            return;
        }
        auto [lo, hi] = cells[c];
        std::sort(order.begin() + lo, order.begin() + hi);
        do rec(c + 1);
        while (std::next_permutation(order.begin() + lo, order.begin() + hi));
    };
    rec(0);
    std::ostringstream ss;
    ss << "n" << n << ":c";
    for (int i = 0; i < n; ++i) ss << (i ? "," : "") << colour[order[i]];
    ss << ":e";
    for (const auto& [a, b] : best) ss << ' ' << a << '-' << b;
    if (g.edges().empty()) ss << " -";
    return ss.str();
}

/// A permutation group on {0..N-1} used for orderly generation of subsets: a sorted
/// subset is canonical when no group element maps it to a lexicographically smaller
/// sorted subset. Removing the largest element of a canonical subset leaves a
/// canonical subset, so canonicity can prune a depth-first enumeration.
class SubsetCanonizer {
public:
    SubsetCanonizer() = default;
    SubsetCanonizer(int domain, std::vector<Permutation> perms) : domain_(domain) {
        for (auto& p : perms) {
            if (static_cast<int>(p.size()) != domain) throw ArgumentError("permutation size mismatch");
            bool identity = true;
            for (int i = 0; i < domain && identity; ++i) identity = p[i] == i;
            if (!identity) flat_.insert(flat_.end(), p.begin(), p.end());
        }
    }

    int group_order() const { return domain_ ? static_cast<int>(flat_.size() / domain_) + 1 : 1; }

    bool is_canonical(std::span<const int> sorted) const {
        const size_t k = sorted.size();
        if (k == 0 || flat_.empty()) return true;
        std::vector<int> img(k);
        for (size_t off = 0; off < flat_.size(); off += static_cast<size_t>(domain_)) {
            const int* p = flat_.data() + off;
            for (size_t i = 0; i < k; ++i) img[i] = p[sorted[i]];
            std::sort(img.begin(), img.end());
            if (std::lexicographical_compare(img.begin(), img.end(), sorted.begin(), sorted.end())) return false;
        }
        return true;
    }

private:
    int domain_ = 0;
    std::vector<int> flat_;
};

}  // namespace onepw
