// rng.hpp - small deterministic generator for instances and property suites
#pragma once

#include <cstdint>

#include "krho/graph.hpp"

namespace krho {

/// splitmix64. Self-contained so that seeded streams are stable across
/// standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        // Rejection sampling keeps the distribution exactly uniform.
        std::uint64_t limit = ~0ULL - (~0ULL % bound + 1) % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v > limit);
        return v % bound;
    }

    /// Uniform value in [lo, hi], inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// True with probability pct/100.
    bool percent(std::uint32_t pct) { return below(100) < pct; }

private:
    std::uint64_t state_;
};

/// Erdos-Renyi style instance: each (ordered or unordered) pair carries an
/// edge with probability edge_pct/100, weights uniform in [1, max_weight].
inline WeightedGraph random_graph(VertexId n, bool directed, std::uint32_t edge_pct,
                                  Weight max_weight, Rng& rng) {
    WeightedGraph g(directed, n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = directed ? 0 : u + 1; v < n; ++v) {
            if (u == v) continue;
            if (rng.percent(edge_pct)) g.add_edge(u, v, rng.range(1, max_weight));
        }
    return g;
}

}  // namespace krho
