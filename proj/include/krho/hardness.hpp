// hardness.hpp - certified hard-instance generation: hypergraph padding,
// the two hitting-set constructions, solution lifting/projection and a
// branching hitting-set oracle
#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "krho/ball.hpp"
#include "krho/distance.hpp"
#include "krho/graph.hpp"
#include "krho/rng.hpp"
#include "krho/shortcut.hpp"

namespace krho {

struct Hypergraph {
    std::uint32_t vertex_count = 0;
    std::vector<std::vector<std::uint32_t>> hyperedges;  // each sorted, nonempty

    std::uint32_t rank() const {
        std::size_t r = 0;
        for (const auto& e : hyperedges) r = std::max(r, e.size());
        return static_cast<std::uint32_t>(r);
    }

    void check() const {
        for (const auto& e : hyperedges) {
            if (e.empty()) throw Error("empty hyperedge");
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] >= vertex_count) throw Error("hyperedge vertex out of range");
                if (i > 0 && e[i] <= e[i - 1]) throw Error("hyperedge not sorted/unique");
            }
        }
    }
};

struct HittingSet {
    std::vector<std::uint32_t> vertices;  // sorted
    std::optional<std::size_t> bound;     // the alpha it was asked to meet
};

inline bool hits_all(const Hypergraph& h, const std::vector<std::uint32_t>& set) {
    for (const auto& e : h.hyperedges) {
        bool hit = false;
        for (std::uint32_t v : e)
            if (std::binary_search(set.begin(), set.end(), v)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

/// Pads every hyperedge with fresh vertices to size exactly d and appends
/// the minimum number of isolated vertices (0 or 1) needed to reach
/// |V| >= d+1 when there are hyperedges. The minimum hitting set value is
/// unchanged: fresh vertices occur in one hyperedge each and never help.
inline Hypergraph pad_hypergraph(const Hypergraph& h, std::uint32_t d) {
    h.check();
    if (h.rank() > d) throw RankTooLarge("hyperedge larger than rank bound d");
    Hypergraph out = h;
    for (auto& e : out.hyperedges)
        while (e.size() < d) e.push_back(out.vertex_count++);
    if (!out.hyperedges.empty() && out.vertex_count < d + 1) out.vertex_count = d + 1;
    out.check();
    return out;
}

/// Vertex-role bookkeeping for the generated instances. Graph ids are laid
/// out deterministically: per-hyperedge paths first, then the element
/// vertices (or chains), then the sinks / parity vertex.
struct ReductionLayout {
    enum class Kind { hitting, tiebreak };

    Kind kind = Kind::hitting;
    bool directed = true;
    Params params;
    std::uint32_t d = 0;
    Hypergraph padded;
    WeightedGraph graph;
    std::vector<std::vector<VertexId>> gadget_path;      // per hyperedge, s..t
    std::vector<VertexId> element_vertex;                // hitting: per padded vertex
    std::vector<std::array<VertexId, 3>> element_chain;  // tiebreak: per padded vertex
    VertexId sink1 = 0, sink2 = 0;                       // hitting only
    std::optional<VertexId> parity;                      // tiebreak, odd case

    VertexId s_of(std::size_t e) const { return gadget_path[e].front(); }
    VertexId t_of(std::size_t e) const { return gadget_path[e].back(); }
};

/// Instance family showing that minimum shortcutting is as hard as hitting
/// set for k >= 2, rho >= k+2: one (k-1)-vertex path per hyperedge, one
/// vertex per element, weight-3 membership edges, and a two-sink tail that
/// only the path starts fail to reach within k hops.
inline ReductionLayout reduce_hitting_set(const Hypergraph& h, Hops k, std::uint32_t rho,
                                          bool directed) {
    if (k < 2) throw ParameterViolation("construction needs k >= 2");
    if (rho < k + 2) throw ParameterViolation("construction needs rho >= k+2");
    const std::uint32_t d = rho - k;
    if (h.rank() > d) throw ParameterViolation("hypergraph rank exceeds d = rho - k");

    ReductionLayout layout;
    layout.kind = ReductionLayout::Kind::hitting;
    layout.directed = directed;
    layout.params = {k, rho};
    layout.d = d;
    layout.padded = pad_hypergraph(h, d);

    const std::size_t m = layout.padded.hyperedges.size();
    const std::uint32_t nh = layout.padded.vertex_count;
    const VertexId path_len = k - 1;
    VertexId n = static_cast<VertexId>(m) * path_len + nh + 2;
    layout.graph = WeightedGraph(directed, n);

    for (std::size_t e = 0; e < m; ++e) {
        std::vector<VertexId> path(path_len);
        for (VertexId j = 0; j < path_len; ++j) path[j] = static_cast<VertexId>(e) * path_len + j;
        for (VertexId j = 0; j + 1 < path_len; ++j) layout.graph.add_edge(path[j], path[j + 1], 1);
        layout.gadget_path.push_back(std::move(path));
    }
    const VertexId elem_base = static_cast<VertexId>(m) * path_len;
    for (std::uint32_t v = 0; v < nh; ++v) layout.element_vertex.push_back(elem_base + v);
    layout.sink1 = elem_base + nh;
    layout.sink2 = layout.sink1 + 1;

    for (std::size_t e = 0; e < m; ++e)
        for (std::uint32_t v : layout.padded.hyperedges[e])
            layout.graph.add_edge(layout.t_of(e), layout.element_vertex[v], 3);
    for (std::uint32_t v = 0; v < nh; ++v)
        layout.graph.add_edge(layout.element_vertex[v], layout.sink1, 1);
    layout.graph.add_edge(layout.sink1, layout.sink2, 1);
    return layout;
}

/// {(v, far sink) : v in U} with the proper weights.
inline ShortcutSet lift_hitting_to_shortcuts(const ReductionLayout& layout,
                                             const HittingSet& u) {
    if (layout.kind != ReductionLayout::Kind::hitting)
        throw PreconditionViolated("lift needs a hitting-set layout");
    for (std::uint32_t v : u.vertices)
        if (v >= layout.padded.vertex_count) throw NotAHittingSet("vertex out of range");
    if (!hits_all(layout.padded, u.vertices))
        throw NotAHittingSet("set misses at least one hyperedge");

    auto table = all_pairs_shortest_with_hops(layout.graph);
    ShortcutSet s;
    for (std::uint32_t v : u.vertices)
        s.shortcuts.push_back(
            make_shortcut(layout.graph, table, layout.element_vertex[v], layout.sink2));
    s.sort_unique();
    return s;
}

/// Normalizes a verifying shortcut set into a hitting set of at most the
/// same size: element endpoints map to themselves, path endpoints map to
/// the smallest element of their hyperedge. For directed layouts the result
/// always hits; undirected layouts admit shortcuts between the element sets
/// of two different hyperedges, each serving both sides, and then no
/// per-shortcut replacement can hit everything - that failure is reported.
inline HittingSet project_shortcuts_to_hitting(const ReductionLayout& layout,
                                               const ShortcutSet& s) {
    if (layout.kind != ReductionLayout::Kind::hitting)
        throw PreconditionViolated("projection needs a hitting-set layout");
    if (!verify_shortcut_set(layout.graph, layout.params, s).ok)
        throw InvalidSolution("shortcut set does not verify on the instance");

    const std::size_t m = layout.padded.hyperedges.size();
    const VertexId path_len = layout.params.k - 1;
    const VertexId elem_base = static_cast<VertexId>(m) * path_len;
    auto element_of = [&](VertexId g) -> std::optional<std::uint32_t> {
        if (g >= elem_base && g < elem_base + layout.padded.vertex_count) return g - elem_base;
        return std::nullopt;
    };
    auto gadget_of = [&](VertexId g) -> std::optional<std::size_t> {
        if (g < elem_base) return g / path_len;
        return std::nullopt;
    };

    HittingSet result;
    for (const Shortcut& sc : s.shortcuts) {
        std::optional<std::uint32_t> pick;
        for (VertexId end : {sc.u, sc.v})
            if (auto v = element_of(end)) {
                pick = *v;
                break;
            }
        if (!pick)
            for (VertexId end : {sc.u, sc.v})
                if (auto e = gadget_of(end)) {
                    pick = layout.padded.hyperedges[*e].front();
                    break;
                }
        if (pick) result.vertices.push_back(*pick);
        // Shortcuts touching only the sinks cannot exist in a verifying set.
    }
    std::sort(result.vertices.begin(), result.vertices.end());
    result.vertices.erase(std::unique(result.vertices.begin(), result.vertices.end()),
                          result.vertices.end());
    if (!hits_all(layout.padded, result.vertices))
        throw NotAHittingSet("per-shortcut replacement does not hit every hyperedge");
    return result;
}

/// Instance family for the tiebreaking question (k >= 2, rho >= k+3):
/// three-vertex chains per element make the boundary tier of each path
/// start a genuine choice among the chain tails of its hyperedge.
inline ReductionLayout reduce_tiebreaker(const Hypergraph& h, Hops k, std::uint32_t rho,
                                         bool directed) {
    if (k < 2) throw ParameterViolation("construction needs k >= 2");
    if (rho < k + 3) throw ParameterViolation("construction needs rho >= k+3");
    const std::uint32_t d = (rho - k + 1) / 2;
    if (h.rank() > d) throw ParameterViolation("hypergraph rank exceeds d = floor((rho-k+1)/2)");
    const bool odd = (rho - k + 1) % 2 == 1;

    ReductionLayout layout;
    layout.kind = ReductionLayout::Kind::tiebreak;
    layout.directed = directed;
    layout.params = {k, rho};
    layout.d = d;
    layout.padded = pad_hypergraph(h, d);

    const std::size_t m = layout.padded.hyperedges.size();
    const std::uint32_t nh = layout.padded.vertex_count;
    const VertexId path_len = k - 1;
    VertexId n = static_cast<VertexId>(m) * path_len + 3 * nh + (odd && m > 0 ? 1 : 0);
    layout.graph = WeightedGraph(directed, n);

    for (std::size_t e = 0; e < m; ++e) {
        std::vector<VertexId> path(path_len);
        for (VertexId j = 0; j < path_len; ++j) path[j] = static_cast<VertexId>(e) * path_len + j;
        for (VertexId j = 0; j + 1 < path_len; ++j) layout.graph.add_edge(path[j], path[j + 1], 1);
        layout.gadget_path.push_back(std::move(path));
    }
    const VertexId chain_base = static_cast<VertexId>(m) * path_len;
    for (std::uint32_t v = 0; v < nh; ++v) {
        std::array<VertexId, 3> chain{chain_base + 3 * v, chain_base + 3 * v + 1,
                                      chain_base + 3 * v + 2};
        layout.graph.add_edge(chain[0], chain[1], 1);
        layout.graph.add_edge(chain[1], chain[2], 1);
        layout.element_chain.push_back(chain);
    }
    if (odd && m > 0) layout.parity = chain_base + 3 * nh;

    for (std::size_t e = 0; e < m; ++e) {
        for (std::uint32_t v : layout.padded.hyperedges[e])
            layout.graph.add_edge(layout.t_of(e), layout.element_chain[v][0], 3);
        if (layout.parity) layout.graph.add_edge(layout.t_of(e), *layout.parity, 3);
    }
    return layout;
}

/// Reads a hitting set off per-path-start neighbor-set choices: element v is
/// selected when some chosen set contains its chain tail. Each assignment
/// must be a legal rho-closest neighbor set of its path start.
inline HittingSet extract_hitting_from_tiebreak(
    const ReductionLayout& layout, const std::vector<std::vector<VertexId>>& assignments) {
    if (layout.kind != ReductionLayout::Kind::tiebreak)
        throw PreconditionViolated("extraction needs a tiebreak layout");
    if (assignments.size() != layout.padded.hyperedges.size())
        throw IllegalAssignment("one neighbor set per hyperedge required");

    auto table = all_pairs_shortest_with_hops(layout.graph);
    for (std::size_t e = 0; e < assignments.size(); ++e) {
        const VertexId s = layout.s_of(e);
        const DistRow& row = table.row(s);
        std::vector<bool> in_set(layout.graph.vertex_count(), false);
        Weight max_in = 0;
        std::size_t reach = 0;
        for (VertexId v = 0; v < layout.graph.vertex_count(); ++v)
            if (v != s && row[v].finite()) ++reach;
        for (VertexId v : assignments[e]) {
            if (v >= layout.graph.vertex_count() || v == s || !row[v].finite() || in_set[v])
                throw IllegalAssignment("assignment contains an ineligible vertex");
            in_set[v] = true;
            max_in = std::max(max_in, row[v].dist);
        }
        if (assignments[e].size() != std::min<std::size_t>(reach, layout.params.rho))
            throw IllegalAssignment("assignment has the wrong cardinality");
        for (VertexId v = 0; v < layout.graph.vertex_count(); ++v)
            if (v != s && row[v].finite() && !in_set[v] && row[v].dist < max_in)
                throw IllegalAssignment("assignment skips a closer vertex");
    }

    HittingSet result;
    for (std::size_t e = 0; e < assignments.size(); ++e)
        for (VertexId v : assignments[e])
            for (std::uint32_t elem = 0; elem < layout.padded.vertex_count; ++elem)
                if (layout.element_chain[elem][2] == v) result.vertices.push_back(elem);
    std::sort(result.vertices.begin(), result.vertices.end());
    result.vertices.erase(std::unique(result.vertices.begin(), result.vertices.end()),
                          result.vertices.end());
    return result;
}

/// Branching search for a minimum hitting set. With `alpha` given, decides
/// existence at that size instead (returns nothing when impossible).
inline std::optional<HittingSet> solve_hitting_exact(const Hypergraph& h,
                                                     std::optional<std::size_t> alpha = {},
                                                     std::uint64_t node_cap = 50'000'000) {
    h.check();
    if (h.hyperedges.empty()) {
        HittingSet empty;
        empty.bound = alpha;
        return empty;
    }

    std::vector<std::uint32_t> chosen_count(h.vertex_count, 0);
    std::vector<std::uint32_t> best, chosen;
    bool have_best = false;
    std::uint64_t nodes = 0;

    auto first_unhit = [&]() -> const std::vector<std::uint32_t>* {
        for (const auto& e : h.hyperedges) {
            bool hit = false;
            for (std::uint32_t v : e)
                if (chosen_count[v]) {
                    hit = true;
                    break;
                }
            if (!hit) return &e;
        }
        return nullptr;
    };

    auto limit = [&]() {
        std::size_t cap = have_best ? best.size() : h.vertex_count + 1;
        if (alpha) cap = std::min(cap, *alpha + 1);
        return cap;
    };

    auto recurse = [&](auto&& self) -> void {
        if (++nodes > node_cap) throw SearchBudgetExceeded("hitting-set search node cap");
        const auto* edge = first_unhit();
        if (!edge) {
            if (!have_best || chosen.size() < best.size()) {
                best = chosen;
                have_best = true;
            }
            return;
        }
        if (chosen.size() + 1 >= limit()) return;
        for (std::uint32_t v : *edge) {
            ++chosen_count[v];
            chosen.push_back(v);
            self(self);
            chosen.pop_back();
            --chosen_count[v];
        }
    };
    recurse(recurse);

    if (!have_best || (alpha && best.size() > *alpha)) return std::nullopt;
    HittingSet result;
    result.vertices = best;
    std::sort(result.vertices.begin(), result.vertices.end());
    result.bound = alpha;
    return result;
}

/// m hyperedges, each a uniform subset of size 1..d. Deterministic per seed.
inline Hypergraph random_hypergraph(std::uint32_t n, std::uint32_t m, std::uint32_t d,
                                    std::uint64_t seed) {
    if (d < 1 || d > n) throw ParameterViolation("need 1 <= d <= n");
    Rng rng(seed);
    Hypergraph h;
    h.vertex_count = n;
    std::vector<std::uint32_t> ids(n);
    for (std::uint32_t i = 0; i < n; ++i) ids[i] = i;
    for (std::uint32_t e = 0; e < m; ++e) {
        std::uint32_t size = static_cast<std::uint32_t>(rng.range(1, d));
        for (std::uint32_t i = 0; i < size; ++i)
            std::swap(ids[i], ids[i + rng.below(n - i)]);
        std::vector<std::uint32_t> edge(ids.begin(), ids.begin() + size);
        std::sort(edge.begin(), edge.end());
        h.hyperedges.push_back(std::move(edge));
    }
    h.check();
    return h;
}

}  // namespace krho
