// oracle.hpp - brute-force reference implementations
//
// Everything here recomputes results from first principles (path
// enumeration, subset enumeration) and deliberately shares no code with the
// algorithms it cross-checks. It backs the self-test command and the test
// suites; it is exponential and only meant for desk-scale instances.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "krho/ball.hpp"
#include "krho/distance.hpp"
#include "krho/graph.hpp"

namespace krho::oracle {

namespace detail {

inline void enumerate_paths(const WeightedGraph& g, VertexId at, Weight w, Hops h,
                            std::vector<bool>& onpath, DistRow& best) {
    if (std::tie(w, h) < std::tie(best[at].dist, best[at].hops)) best[at] = {w, h};
    for (const auto& arc : g.out(at)) {
        if (onpath[arc.to]) continue;
        onpath[arc.to] = true;
        enumerate_paths(g, arc.to, w + arc.w, h + 1, onpath, best);
        onpath[arc.to] = false;
    }
}

/// Visits all index subsets of size `want` of 0..total-1.
template <typename Fn>
bool for_each_combination(std::size_t total, std::size_t want, Fn&& fn) {
    std::vector<std::size_t> idx(want);
    for (std::size_t i = 0; i < want; ++i) idx[i] = i;
    if (want > total) return false;
    while (true) {
        if (fn(idx)) return true;
        std::size_t i = want;
        while (i > 0 && idx[i - 1] == total - (want - i) - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < want; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// All-pairs (dist, hops) by exhaustive simple-path enumeration. With
/// strictly positive weights every shortest walk is a simple path, so this
/// is an exact reference for the Dijkstra-based table.
inline DistanceTable exhaustive_distance_table(const WeightedGraph& g) {
    const VertexId n = g.vertex_count();
    std::vector<DistRow> rows(n);
    for (VertexId u = 0; u < n; ++u) {
        DistRow best(n);
        std::vector<bool> onpath(n, false);
        onpath[u] = true;
        detail::enumerate_paths(g, u, 0, 0, onpath, best);
        best[u] = {0, 0};
        rows[u] = std::move(best);
    }
    return DistanceTable(n, std::move(rows));
}

/// Definitional ball check: enumerate every candidate rho-closest neighbor
/// set of u and ask whether one of them lies entirely within k hops.
inline bool has_ball_bruteforce(const DistanceTable& table, Params p, VertexId u) {
    const DistRow& row = table.row(u);
    std::vector<VertexId> reach;
    for (VertexId v = 0; v < row.size(); ++v)
        if (v != u && row[v].finite()) reach.push_back(v);
    const std::size_t need = std::min<std::size_t>(reach.size(), p.rho);
    if (need == 0) return true;

    return detail::for_each_combination(reach.size(), need, [&](const std::vector<std::size_t>& idx) {
        Weight max_in = 0;
        std::vector<bool> chosen(reach.size(), false);
        for (std::size_t i : idx) {
            chosen[i] = true;
            max_in = std::max(max_in, row[reach[i]].dist);
        }
        Weight min_out = kInfWeight;
        for (std::size_t i = 0; i < reach.size(); ++i)
            if (!chosen[i]) min_out = std::min(min_out, row[reach[i]].dist);
        if (max_in > min_out) return false;  // not a rho-closest set
        for (std::size_t i : idx)
            if (row[reach[i]].hops > p.k) return false;
        return true;
    });
}

/// Smallest number of pool edges whose addition gives every vertex its
/// ball, found by plain subset enumeration in increasing size. Edges are
/// added without parallel-edge cleanup; heavier parallels never sit on a
/// shortest path, so the ball verdicts are unaffected. Returns one past
/// `cap` when no subset up to `cap` works.
struct ShortcutEdge {
    VertexId u, v;
    Weight w;
};
inline std::size_t min_shortcut_size_bruteforce(const WeightedGraph& g, Params p,
                                                const std::vector<ShortcutEdge>& pool,
                                                std::size_t cap) {
    auto solved = [&](const WeightedGraph& h) {
        auto t = all_pairs_shortest_with_hops(h);
        for (VertexId u = 0; u < h.vertex_count(); ++u)
            if (!has_ball_bruteforce(t, p, u)) return false;
        return true;
    };
    if (solved(g)) return 0;
    cap = std::min(cap, pool.size());
    for (std::size_t size = 1; size <= cap; ++size) {
        bool found = detail::for_each_combination(pool.size(), size, [&](const std::vector<std::size_t>& idx) {
            WeightedGraph h = g;
            for (std::size_t i : idx) h.add_edge(pool[i].u, pool[i].v, pool[i].w);
            return solved(h);
        });
        if (found) return size;
    }
    return cap + 1;
}

/// Smallest hitting-set size by subset enumeration in increasing size.
/// `hyperedges` must all be nonempty.
inline std::size_t min_hitting_bruteforce(std::uint32_t vertex_count,
                                          const std::vector<std::vector<std::uint32_t>>& hyperedges) {
    if (hyperedges.empty()) return 0;
    std::vector<bool> in_set(vertex_count, false);
    auto hits_all = [&]() {
        for (const auto& e : hyperedges) {
            bool hit = false;
            for (std::uint32_t v : e)
                if (in_set[v]) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
        return true;
    };
    for (std::size_t size = 1; size <= vertex_count; ++size) {
        bool found = detail::for_each_combination(vertex_count, size, [&](const std::vector<std::size_t>& idx) {
            std::fill(in_set.begin(), in_set.end(), false);
            for (std::size_t i : idx) in_set[i] = true;
            return hits_all();
        });
        if (found) return size;
    }
    return vertex_count;  // unreachable for nonempty hyperedges
}

}  // namespace krho::oracle
