#pragma once

// Exhaustive searches over crossing pairings: 1-planarity, minimum crossings, drawings
// with a prescribed set of vertices on the outer face, and extremal edge counts.
//
// A pairing (set of disjoint crossing edge pairs) is tested by planarity of its
// alternation gadget. Pairings of one size are enumerated depth-first in increasing
// candidate order with two prunes:
//  - orderly generation: only subsets canonical under the graph's automorphisms,
//  - decided edges: edges before the current first edge can no longer be crossed, so if
//    they cannot be drawn uncrossed next to the chosen crossings, no extension can.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "onepw/bounds.hpp"
#include "onepw/drawing.hpp"
#include "onepw/error.hpp"
#include "onepw/graph.hpp"
#include "onepw/planarity.hpp"
#include "onepw/symmetry.hpp"

namespace onepw {

struct SearchBudget {
    int max_crossings = 1000;
    long long max_nodes = 4'000'000'000LL;
    double time_limit = 3600;  // seconds, per search call
    bool use_symmetry = true;
    bool use_screens = true;  // off: the edge-count bounds never decide, search does
    int jobs = 1;

    void validate() const {
        if (max_crossings <= 0 || max_nodes <= 0 || !(time_limit > 0) || jobs <= 0)
            throw ArgumentError("search budget limits must be positive");
    }
    std::string text() const {
        return "crossings=" + std::to_string(max_crossings) + ",nodes=" + std::to_string(max_nodes) +
               ",time=" + std::to_string(static_cast<long long>(time_limit)) + ",symmetry=" + (use_symmetry ? "on" : "off") +
               (use_screens ? "" : ",screens=off");
    }
};

enum class Verdict { yes, no, unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "YES";
        case Verdict::no: return "NO";
        default: return "UNKNOWN";
    }
}

struct SearchStats {
    long long nodes = 0;
    long long planarity_tests = 0;
    long long symmetry_pruned = 0;
    long long decided_pruned = 0;
    long long group_order = 1;
    double seconds = 0;
};

struct SearchResult {
    Verdict verdict = Verdict::unknown;
    int crossings = -1;  // size of the returned pairing when verdict is yes
    std::optional<OnePlanarDrawing> drawing;
    std::vector<std::string> provenance;  // screens and bounds that decided or shaped the search
    SearchStats stats;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline long long planar_limit(long long n, bool bipartite) {
    if (n < 3) return n * (n - 1) / 2;
    return bipartite ? 2 * n - 4 : 3 * n - 6;
}

/// Orderly depth-first search over pairings of one fixed size.
class PairingSearch {
public:
    enum class Outcome { found, none, truncated };

    PairingSearch(const SimpleGraph& g, std::span<const Vertex> rim, std::span<const int> colour,
                  const SearchBudget& budget, Clock::time_point start, SearchStats& stats)
        : g_(g), rim_(rim.begin(), rim.end()), budget_(budget), start_(start), stats_(stats) {
        const int m = g.edge_count();
        cand_index_.assign(static_cast<size_t>(m) * m, -1);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                auto [a, b] = g.edge(i);
                auto [c, d] = g.edge(j);
                if (a == c || a == d || b == c || b == d) continue;
                cand_index_[static_cast<size_t>(i) * m + j] = static_cast<int>(cand_.size());
                cand_.emplace_back(i, j);
            }
        if (budget.use_symmetry && !cand_.empty()) {
            auto autos = automorphisms(g, colour, 20'000);
            std::vector<Permutation> perms;
            for (const auto& p : autos) {
                Permutation cp(cand_.size());
                for (size_t c = 0; c < cand_.size(); ++c) {
                    auto [i, j] = cand_[c];
                    int pi = g.edge_index(p[g.edge(i).first], p[g.edge(i).second]);
                    int pj = g.edge_index(p[g.edge(j).first], p[g.edge(j).second]);
                    if (pi > pj) std::swap(pi, pj);
                    cp[c] = cand_index_[static_cast<size_t>(pi) * m + pj];
                }
                perms.push_back(std::move(cp));
            }
            canon_ = SubsetCanonizer(static_cast<int>(cand_.size()), std::move(perms));
            stats_.group_order = std::max<long long>(stats_.group_order, canon_.group_order());
        }
    }

    int candidate_count() const { return static_cast<int>(cand_.size()); }

    /// When set, every feasible pairing is offered to `visit` and only a true return
    /// ends the search.
    void set_visitor(std::function<bool(const std::vector<EdgePair>&)> visit) { visit_ = std::move(visit); }

    Outcome run(int k, std::vector<EdgePair>& out) {
        k_ = k;
        best_branch_ = INT_MAX;
        truncated_ = false;
        next_branch_ = 0;
        found_.clear();
        if (k == 0) {
            Worker w(*this);
            if (w.feasible(INT_MAX) && (!visit_ || visit_(w.pairs))) {
                out.clear();
                return Outcome::found;
            }
            return Outcome::none;
        }
        const int branches = static_cast<int>(cand_.size());
        auto work = [&] {
            Worker w(*this);
            for (int b; (b = next_branch_.fetch_add(1)) < branches;) {
                if (b > best_branch_.load() || truncated_.load()) break;
                w.branch(b);
            }
            std::lock_guard lock(mu_);
            stats_.nodes += w.nodes;
            stats_.planarity_tests += w.tests;
            stats_.symmetry_pruned += w.sym_pruned;
            stats_.decided_pruned += w.dec_pruned;
        };
        const int jobs = std::max(1, std::min(budget_.jobs, branches));
        if (jobs == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
        if (best_branch_.load() != INT_MAX) {
            out = found_;
            return Outcome::found;
        }
        return truncated_.load() ? Outcome::truncated : Outcome::none;
    }

private:
    struct Worker {
        PairingSearch& s;
        std::vector<char> used;
        std::vector<int> chosen;
        std::vector<Edge> uncrossed;
        std::vector<EdgePair> pairs;
        long long nodes = 0, tests = 0, sym_pruned = 0, dec_pruned = 0;
        int branch_id = 0;

        explicit Worker(PairingSearch& owner) : s(owner), used(static_cast<size_t>(owner.g_.edge_count()), 0) {}

        // Edges below `limit` that are not crossed are drawn uncrossed.
        bool feasible(int limit) {
            uncrossed.clear();
            pairs.clear();
            for (int e = 0; e < s.g_.edge_count() && e < limit; ++e)
                if (!used[e]) uncrossed.push_back(s.g_.edge(e));
            for (int c : chosen) pairs.emplace_back(s.g_.edge(s.cand_[c].first), s.g_.edge(s.cand_[c].second));
            Gadget gad = build_gadget(s.g_.vertex_count(), uncrossed, pairs, s.rim_);
            ++tests;
            return planar_verdict(gad.vertex_count, gad.edges);
        }

        bool over_budget() {
            ++nodes;
            if ((nodes & 255) == 0) {
                long long total = s.node_total_.fetch_add(256) + 256;
                double secs = std::chrono::duration<double>(Clock::now() - s.start_).count();
                if (total > s.budget_.max_nodes || secs > s.budget_.time_limit) s.truncated_ = true;
            }
            return s.truncated_.load();
        }

        void branch(int b) {
            branch_id = b;
            dfs(b);
        }

        // Returns true to stop this branch.
        bool dfs(int c) {
            if (over_budget()) return true;
            if (branch_id > s.best_branch_.load()) return true;
            auto [i, j] = s.cand_[c];
            if (used[i] || used[j]) return false;
            chosen.push_back(c);
            used[i] = used[j] = 1;
            bool stop = false;
            if (!s.canon_.is_canonical(chosen)) {
                ++sym_pruned;
            } else if (static_cast<int>(chosen.size()) == s.k_) {
                if (feasible(INT_MAX) && (!s.visit_ || s.visit_(pairs))) {
                    std::lock_guard lock(s.mu_);
                    if (branch_id < s.best_branch_.load()) {
                        s.best_branch_ = branch_id;
                        s.found_ = pairs;
                    }
                    stop = true;
                }
            } else {
                int free_after = 0;
                for (int e = i; e < s.g_.edge_count(); ++e) free_after += !used[e];
                if (free_after < 2 * (s.k_ - static_cast<int>(chosen.size()))) {
                    ++dec_pruned;
                } else if (!feasible(i)) {
                    ++dec_pruned;
                } else {
                    for (int nc = c + 1; nc < static_cast<int>(s.cand_.size()) && !stop; ++nc) stop = dfs(nc);
                }
            }
            used[i] = used[j] = 0;
            chosen.pop_back();
            return stop;
        }
    };

    const SimpleGraph& g_;
    std::vector<Vertex> rim_;
    const SearchBudget& budget_;
    Clock::time_point start_;
    SearchStats& stats_;
    std::vector<std::pair<int, int>> cand_;
    std::vector<int> cand_index_;
    SubsetCanonizer canon_;

    int k_ = 0;
    std::atomic<int> best_branch_{INT_MAX};
    std::atomic<bool> truncated_{false};
    std::atomic<int> next_branch_{0};
    std::atomic<long long> node_total_{0};
    std::mutex mu_;
    std::vector<EdgePair> found_;
    std::function<bool(const std::vector<EdgePair>&)> visit_;
};

/// Shared driver: screens, then pairings of increasing size from the lower bound.
inline SearchResult search_min_pairing(const SimpleGraph& g, const std::optional<Bipartition>& given_parts,
                                       std::span<const Vertex> rim, const SearchBudget& budget) {
    budget.validate();
    const auto start = Clock::now();
    SearchResult res;
    const long long n = g.vertex_count(), m = g.edge_count();
    for (Vertex v : rim)
        if (v < 0 || v >= n) throw ArgumentError("rim vertex out of range");
    if (given_parts && !given_parts->is_valid_for(g)) throw ArgumentError("bipartition does not match graph");
    std::optional<Bipartition> parts = given_parts ? given_parts : two_colouring(g);
    const bool bipartite = parts.has_value();
    auto finish = [&](Verdict v) {
        res.verdict = v;
        res.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return res;
    };

    long long k_lo = 0;
    if (bipartite) {
        long long lim = planar_limit(n, true);
        res.provenance.push_back("screen bipartite-planar: crossings>=" + std::to_string(std::max(0LL, m - lim)));
        k_lo = std::max(k_lo, m - lim);
        if (budget.use_screens && n >= 4 && m > karpov_bound(n)) {
            res.provenance.push_back("screen karpov: " + std::to_string(m) + ">" + std::to_string(karpov_bound(n)));
            return finish(Verdict::no);
        }
        const long long x = std::min(parts->x(), parts->y());
        if (budget.use_screens && x >= 2 && m > main_bound(n, x)) {
            res.provenance.push_back("screen main-bound: " + std::to_string(m) + ">" + std::to_string(main_bound(n, x)));
            return finish(Verdict::no);
        }
    } else {
        long long lim = planar_limit(n, false);
        res.provenance.push_back("screen planar: crossings>=" + std::to_string(std::max(0LL, m - lim)));
        k_lo = std::max(k_lo, m - lim);
    }
    if (!rim.empty()) {
        // the graph plus an apex joined to the rim stays planar after uncrossing
        bool apex_bipartite = bipartite && std::all_of(rim.begin(), rim.end(), [&](Vertex v) {
                                  return parts->in_x(v) == parts->in_x(rim[0]);
                              });
        long long lim = planar_limit(n + 1, apex_bipartite);
        long long lo = m + static_cast<long long>(rim.size()) - lim;
        res.provenance.push_back("screen rim-apex: crossings>=" + std::to_string(std::max(0LL, lo)));
        k_lo = std::max(k_lo, lo);
    }
    if (2 * k_lo > m) {
        res.provenance.push_back("screen: crossing lower bound exceeds " + std::to_string(m / 2) + " pairs");
        return finish(Verdict::no);
    }

    std::vector<int> colour = search_colouring(static_cast<int>(n), bipartite ? &*parts : nullptr, rim);
    PairingSearch search(g, rim, colour, budget, start, res.stats);
    const long long k_hi = std::min<long long>(m / 2, budget.max_crossings);
    for (long long k = k_lo; k <= k_hi; ++k) {
        std::vector<EdgePair> pairs;
        auto outcome = search.run(static_cast<int>(k), pairs);
        if (outcome == PairingSearch::Outcome::truncated) {
            res.provenance.push_back("budget exhausted at crossings=" + std::to_string(k));
            return finish(Verdict::unknown);
        }
        if (outcome == PairingSearch::Outcome::found) {
            res.drawing = planarize_from(g, pairs, parts, rim);
            if (!res.drawing) throw StructuralError("gadget accepted a pairing that planarize_from rejects");
            res.crossings = static_cast<int>(k);
            return finish(Verdict::yes);
        }
    }
    if (k_hi < m / 2) {
        res.provenance.push_back("max_crossings reached at " + std::to_string(k_hi));
        return finish(Verdict::unknown);
    }
    res.provenance.push_back("exhausted all pairings");
    return finish(Verdict::no);
}

}  // namespace detail

/// A 1-planar drawing of g with as few crossings as possible, or a verdict that none
/// exists. Pairings are tried by increasing size, so a yes is crossing-minimal.
inline SearchResult decide_one_planar(const SimpleGraph& g, const SearchBudget& budget = {},
                                      const std::optional<Bipartition>& parts = std::nullopt) {
    return detail::search_min_pairing(g, parts, {}, budget);
}

inline SearchResult min_crossings_one_planar(const SimpleGraph& g, const SearchBudget& budget = {},
                                             const std::optional<Bipartition>& parts = std::nullopt) {
    return detail::search_min_pairing(g, parts, {}, budget);
}

/// Minimum crossings over 1-planar drawings with every vertex of `rim_side` on the
/// outer face and everything else inside.
inline SearchResult disc_min_crossings(const BipartiteGraph& g, Side rim_side = Side::X, const SearchBudget& budget = {}) {
    auto rim = g.parts.members(rim_side);
    return detail::search_min_pairing(g.graph, g.parts, rim, budget);
}

/// Offers every drawing of g with exactly k crossings (one per automorphism orbit of
/// pairings when symmetry is on) to `visit` until it returns true. Single-threaded.
/// Returns false if the budget ran out first.
inline bool for_each_drawing(const SimpleGraph& g, const std::optional<Bipartition>& parts,
                             std::span<const Vertex> rim, int k, SearchBudget budget,
                             const std::function<bool(const OnePlanarDrawing&)>& visit) {
    budget.validate();
    budget.jobs = 1;
    SearchStats stats;
    std::vector<int> colour = search_colouring(g.vertex_count(), parts ? &*parts : nullptr, rim);
    detail::PairingSearch search(g, rim, colour, budget, detail::Clock::now(), stats);
    search.set_visitor([&](const std::vector<EdgePair>& pairs) {
        auto d = planarize_from(g, pairs, parts, rim);
        if (!d) throw StructuralError("gadget accepted a pairing that planarize_from rejects");
        return visit(*d);
    });
    std::vector<EdgePair> ignored;
    return search.run(k, ignored) != detail::PairingSearch::Outcome::truncated;
}

struct ExtremalResult {
    int x = 0, y = 0;
    int max_edges = -1;
    std::optional<OnePlanarDrawing> witness;
    bool exhausted = false;
    std::vector<std::string> provenance;
    long long graphs_tested = 0;
};

namespace detail {

/// Calls visit(removed) for one representative per orbit of r-subsets of edges.
/// Returns false if visit asked to stop.
inline bool for_each_canonical_subset(int domain, int r, const SubsetCanonizer& canon,
                                      const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> cur;
    std::function<bool(int)> rec = [&](int from) {
        if (static_cast<int>(cur.size()) == r) return visit(cur);
        for (int e = from; e + (r - static_cast<int>(cur.size())) <= domain; ++e) {
            cur.push_back(e);
            bool go = !canon.is_canonical(cur) || rec(e + 1);
            cur.pop_back();
            if (!go) return false;
        }
        return true;
    };
    return rec(0);
}

}  // namespace detail

/// Largest edge count of a 1-planar subgraph of K_{x,y} that keeps both parts whole.
/// Edge counts are tried from x*y down; each is settled by one search per
/// isomorphism class of removed edge sets, unless a closed-form screen rejects it.
inline ExtremalResult extremal_search(int x, int y, const SearchBudget& budget = {}) {
    if (x < 2 || y < x) throw ArgumentError("extremal_search needs 2 <= x <= y");
    budget.validate();
    ExtremalResult out;
    out.x = x;
    out.y = y;
    const int n = x + y;
    auto k = complete_bipartite(x, y);
    const int total = x * y;
    std::vector<int> colour = search_colouring(n, &k.parts, {});
    std::vector<Permutation> edge_perms;
    if (budget.use_symmetry)
        for (const auto& p : automorphisms(k.graph, colour, 200'000)) {
            Permutation ep(static_cast<size_t>(total));
            for (int e = 0; e < total; ++e) ep[e] = k.graph.edge_index(p[k.graph.edge(e).first], p[k.graph.edge(e).second]);
            edge_perms.push_back(std::move(ep));
        }
    SubsetCanonizer canon(total, std::move(edge_perms));
    bool all_settled = true;
    for (int m = total; m >= 0; --m) {
        if (budget.use_screens && m > main_bound(n, x)) {
            out.provenance.push_back("m=" + std::to_string(m) + " rejected by main-bound " + std::to_string(main_bound(n, x)));
            continue;
        }
        if (budget.use_screens && n >= 4 && m > karpov_bound(n)) {
            out.provenance.push_back("m=" + std::to_string(m) + " rejected by karpov " + std::to_string(karpov_bound(n)));
            continue;
        }
        long long classes = 0, unknown = 0;
        detail::for_each_canonical_subset(total, total - m, canon, [&](const std::vector<int>& removed) {
            ++classes;
            std::vector<Edge> keep;
            for (int e = 0, r = 0; e < total; ++e) {
                if (r < static_cast<int>(removed.size()) && removed[r] == e) {
                    ++r;
                    continue;
                }
                keep.push_back(k.graph.edge(e));
            }
            SimpleGraph sub(n, std::move(keep));
            auto res = decide_one_planar(sub, budget, k.parts);
            ++out.graphs_tested;
            if (res.verdict == Verdict::unknown) ++unknown;
            if (res.verdict == Verdict::yes) {
                out.witness = std::move(res.drawing);
                return false;
            }
            return true;
        });
        if (out.witness) {
            out.max_edges = m;
            out.exhausted = all_settled;
            out.provenance.push_back("m=" + std::to_string(m) + " witness after " + std::to_string(classes) + " classes");
            return out;
        }
        out.provenance.push_back("m=" + std::to_string(m) + " " + std::to_string(classes) + " classes, none 1-planar" +
                                 (unknown ? " (" + std::to_string(unknown) + " undecided)" : ""));
        if (unknown) all_settled = false;
    }
    out.exhausted = all_settled;
    return out;
}

struct Problem5Sample {
    int x = 0, y = 0, edges = 0, crossings = -1;
    Rational bound;
    bool holds = false;
};

struct Problem5Report {
    std::vector<Problem5Sample> samples;
    int infeasible = 0, undecided = 0;
    int violations() const {
        return static_cast<int>(std::count_if(samples.begin(), samples.end(), [](const auto& s) { return !s.holds; }));
    }
};

/// Random bipartite graphs with |X| in [2, max_x] and |Y| in [1, max_y]; for those with
/// a drawing inside a disc bounded by X, records whether |E| <= 2|Y| + 5|X|/3 - 2.
inline Problem5Report probe_problem5(int samples, std::uint64_t seed = 1, int max_x = 4, int max_y = 5,
                                     const SearchBudget& budget = {}) {
    if (samples < 0 || max_x < 2 || max_y < 1) throw ArgumentError("probe_problem5: bad sampling range");
    std::mt19937_64 rng(seed);
    Problem5Report rep;
    for (int s = 0; s < samples; ++s) {
        const int x = std::uniform_int_distribution<int>(2, max_x)(rng);
        const int y = std::uniform_int_distribution<int>(1, max_y)(rng);
        auto full = complete_bipartite(x, y);
        std::vector<Edge> es;
        for (const auto& e : full.graph.edges())
            if (std::bernoulli_distribution(0.7)(rng)) es.push_back(e);
        BipartiteGraph g{SimpleGraph(x + y, std::move(es)), full.parts};
        auto res = disc_min_crossings(g, Side::X, budget);
        if (res.verdict == Verdict::no) {
            ++rep.infeasible;
            continue;
        }
        if (res.verdict == Verdict::unknown) {
            ++rep.undecided;
            continue;
        }
        Problem5Sample p{x, y, g.graph.edge_count(), res.crossings, Rational(2 * y - 2) + Rational(5 * x, 3), false};
        p.holds = Rational(p.edges) <= p.bound;
        rep.samples.push_back(p);
    }
    return rep;
}

}  // namespace onepw
