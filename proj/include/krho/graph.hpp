// graph.hpp - weighted graphs with strictly positive integer weights
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "krho/errors.hpp"

namespace krho {

using VertexId = std::uint32_t;
using Weight = std::uint64_t;
using Hops = std::uint32_t;

/// Sentinel for "no path". Never a legal finite distance.
inline constexpr Weight kInfWeight = std::numeric_limits<Weight>::max();
inline constexpr Hops kInfHops = std::numeric_limits<Hops>::max();

/// Hop budget k and neighbor count rho. Both are at least 1.
struct Params {
    Hops k = 1;
    std::uint32_t rho = 1;
};

inline void validate(const Params& p) {
    if (p.k < 1 || p.rho < 1)
        throw ParameterViolation("k and rho must be positive");
}

/// Directed or undirected graph over dense vertex ids 0..n-1.
///
/// Weights are integers >= 1 so that distance ties are detected exactly.
/// Parallel edges are representable (they appear transiently when shortcut
/// sets are applied) but self-loops are rejected. Undirected edges are kept
/// with canonical endpoint order u < v.
class WeightedGraph {
public:
    struct Edge {
        VertexId u, v;
        Weight w;
        friend bool operator==(const Edge&, const Edge&) = default;
    };
    struct Arc {
        VertexId to;
        Weight w;
    };

    WeightedGraph() : directed_(false), n_(0) {}
    WeightedGraph(bool directed, VertexId n) : directed_(directed), n_(n), adj_(n) {}

    bool directed() const { return directed_; }
    VertexId vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Arc> out(VertexId u) const { return adj_[u]; }

    void add_edge(VertexId u, VertexId v, Weight w) {
        if (u >= n_ || v >= n_)
            throw Error("edge endpoint out of range: (" + std::to_string(u) + "," +
                        std::to_string(v) + ") with n=" + std::to_string(n_));
        if (u == v) throw Error("self-loops are not allowed");
        if (w < 1) throw Error("edge weights must be >= 1");
        if (w == kInfWeight) throw Error("edge weight too large");
        if (!directed_ && u > v) std::swap(u, v);
        edges_.push_back({u, v, w});
        adj_[u].push_back({v, w});
        if (!directed_) adj_[v].push_back({u, w});
    }

    /// True if some edge joins u to v (any weight; direction respected).
    bool has_edge(VertexId u, VertexId v) const {
        for (const Arc& a : adj_[u])
            if (a.to == v) return true;
        return false;
    }

    /// Smallest weight among parallel edges from u to v, or kInfWeight.
    Weight lightest_edge(VertexId u, VertexId v) const {
        Weight best = kInfWeight;
        for (const Arc& a : adj_[u])
            if (a.to == v) best = std::min(best, a.w);
        return best;
    }

    /// Copy with all edges whose endpoints match (u,v) removed.
    /// For undirected graphs the pair is unordered.
    void remove_edges_between(VertexId u, VertexId v) {
        auto matches = [&](const Edge& e) {
            if (directed_) return e.u == u && e.v == v;
            return (e.u == std::min(u, v)) && (e.v == std::max(u, v));
        };
        std::erase_if(edges_, matches);
        rebuild_adjacency();
    }

    /// Canonical form: edge list sorted by (u, v, w). Used by the writers so
    /// that parse(write(g)) is the identity on canonical graphs.
    void canonicalize() {
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
        });
        rebuild_adjacency();
    }

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.directed_ == b.directed_ && a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void rebuild_adjacency() {
        adj_.assign(n_, {});
        for (const Edge& e : edges_) {
            adj_[e.u].push_back({e.v, e.w});
            if (!directed_) adj_[e.v].push_back({e.u, e.w});
        }
    }

    bool directed_;
    VertexId n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> adj_;
};

}  // namespace krho
