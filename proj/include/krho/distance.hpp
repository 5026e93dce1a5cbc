// distance.hpp - exact (weight distance, fewest hops) tables
#pragma once

#include <atomic>
#include <mutex>
#include <queue>
#include <thread>
#include <tuple>
#include <vector>

#include "krho/graph.hpp"

namespace krho {

/// One (distance, hops) cell. hops is the minimum edge count among all
/// minimum-weight paths, not the unconstrained hop minimum.
struct DistEntry {
    Weight dist = kInfWeight;
    Hops hops = kInfHops;
    bool finite() const { return dist != kInfWeight; }
    friend bool operator==(const DistEntry&, const DistEntry&) = default;
};

/// Single-source row of (dist, hops) values.
using DistRow = std::vector<DistEntry>;

/// Dense all-pairs table of (dist, hops) values.
class DistanceTable {
public:
    DistanceTable() = default;
    DistanceTable(VertexId n, std::vector<DistRow> rows) : n_(n), rows_(std::move(rows)) {}

    VertexId n() const { return n_; }
    Weight dist(VertexId u, VertexId v) const { return rows_[u][v].dist; }
    Hops hops(VertexId u, VertexId v) const { return rows_[u][v].hops; }
    bool finite(VertexId u, VertexId v) const { return rows_[u][v].finite(); }
    const DistRow& row(VertexId u) const { return rows_[u]; }

    friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

private:
    VertexId n_ = 0;
    std::vector<DistRow> rows_;
};

/// Dijkstra from `source` with priorities compared lexicographically on
/// (distance, hops). Weights are >= 1, so the label-setting argument holds
/// for both components and the resulting hops value is exactly the fewest
/// edge count over all shortest paths.
inline DistRow shortest_with_hops_from(const WeightedGraph& g, VertexId source) {
    const VertexId n = g.vertex_count();
    DistRow row(n);
    row[source] = {0, 0};
    using Item = std::tuple<Weight, Hops, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0, 0, source);
    while (!pq.empty()) {
        auto [d, h, u] = pq.top();
        pq.pop();
        if (std::tie(d, h) != std::tie(row[u].dist, row[u].hops)) continue;
        for (const auto& arc : g.out(u)) {
            if (d >= kInfWeight - arc.w)
                throw OverflowError("distance accumulator overflow at vertex " +
                                    std::to_string(arc.to));
            Weight nd = d + arc.w;
            Hops nh = h + 1;
            if (std::tie(nd, nh) < std::tie(row[arc.to].dist, row[arc.to].hops)) {
                row[arc.to] = {nd, nh};
                pq.emplace(nd, nh, arc.to);
            }
        }
    }
    return row;
}

inline DistanceTable all_pairs_shortest_with_hops(const WeightedGraph& g) {
    std::vector<DistRow> rows;
    rows.reserve(g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        rows.push_back(shortest_with_hops_from(g, u));
    return DistanceTable(g.vertex_count(), std::move(rows));
}

/// Same table, with source rows split across up to `threads` workers. The
/// per-source computations share nothing, so the result is identical to the
/// sequential build.
inline DistanceTable all_pairs_shortest_with_hops(const WeightedGraph& g, unsigned threads) {
    const VertexId n = g.vertex_count();
    if (threads <= 1 || n < 2) return all_pairs_shortest_with_hops(g);
    threads = std::min<unsigned>(threads, n);
    std::vector<DistRow> rows(n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    std::atomic<VertexId> next{0};
    for (unsigned t = 0; t < threads; ++t)
        workers.emplace_back([&] {
            try {
                for (VertexId u = next.fetch_add(1); u < n; u = next.fetch_add(1))
                    rows[u] = shortest_with_hops_from(g, u);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
    return DistanceTable(n, std::move(rows));
}

}  // namespace krho
