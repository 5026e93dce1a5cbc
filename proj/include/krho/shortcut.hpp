// shortcut.hpp - shortcut sets: construction, application, verification,
// hop-2 normalization and per-candidate coverage
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "krho/ball.hpp"
#include "krho/distance.hpp"
#include "krho/graph.hpp"

namespace krho {

/// A distance-preserving extra edge: weight equals the weight distance of
/// its endpoints, which must be at hop distance > 1 in the base graph.
/// Undirected shortcuts are stored with u < v.
struct Shortcut {
    VertexId u = 0, v = 0;
    Weight weight = 0;
    friend bool operator==(const Shortcut&, const Shortcut&) = default;
    friend auto operator<=>(const Shortcut&, const Shortcut&) = default;
};

struct ShortcutSet {
    std::vector<Shortcut> shortcuts;
    std::optional<std::size_t> budget;

    std::size_t size() const { return shortcuts.size(); }

    void sort_unique() {
        std::sort(shortcuts.begin(), shortcuts.end());
        shortcuts.erase(std::unique(shortcuts.begin(), shortcuts.end()), shortcuts.end());
    }
};

namespace detail {

inline std::string pair_str(VertexId u, VertexId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

/// Empty string when s is a shortcut for g, else the reason it is not.
inline std::string shortcut_problem(const WeightedGraph& g, const DistanceTable& table,
                                    const Shortcut& s) {
    if (s.u >= g.vertex_count() || s.v >= g.vertex_count())
        return "endpoint out of range " + pair_str(s.u, s.v);
    if (s.u == s.v) return "degenerate pair " + pair_str(s.u, s.v);
    if (!g.directed() && s.u > s.v) return "undirected pair not in canonical order " + pair_str(s.u, s.v);
    if (!table.finite(s.u, s.v)) return "endpoints unreachable " + pair_str(s.u, s.v);
    if (table.hops(s.u, s.v) <= 1) return "endpoints already adjacent " + pair_str(s.u, s.v);
    if (s.weight != table.dist(s.u, s.v))
        return "weight " + std::to_string(s.weight) + " differs from distance " +
               std::to_string(table.dist(s.u, s.v)) + " for " + pair_str(s.u, s.v);
    return {};
}

}  // namespace detail

inline Shortcut make_shortcut(const WeightedGraph& g, const DistanceTable& table, VertexId u,
                              VertexId v) {
    if (u >= g.vertex_count() || v >= g.vertex_count() || u == v)
        throw NotAShortcut("invalid endpoint pair " + detail::pair_str(u, v));
    if (!g.directed() && u > v) std::swap(u, v);
    if (!table.finite(u, v)) throw NotAShortcut("endpoints unreachable " + detail::pair_str(u, v));
    if (table.hops(u, v) <= 1) throw NotAShortcut("endpoints adjacent " + detail::pair_str(u, v));
    return Shortcut{u, v, table.dist(u, v)};
}

/// Base graph plus the shortcut edges. Any pre-existing edge parallel to a
/// shortcut necessarily has strictly greater weight and is dropped, so the
/// result is a simple graph with unchanged pairwise distances.
inline WeightedGraph apply_shortcuts(const WeightedGraph& g, const DistanceTable& table,
                                     const ShortcutSet& s) {
    std::vector<Shortcut> sorted = s.shortcuts;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i].u == sorted[i + 1].u && sorted[i].v == sorted[i + 1].v)
            throw NotAShortcut("duplicate endpoint pair " +
                               detail::pair_str(sorted[i].u, sorted[i].v));
    WeightedGraph result = g;
    for (const Shortcut& sc : sorted) {
        std::string problem = detail::shortcut_problem(g, table, sc);
        if (!problem.empty()) throw NotAShortcut(problem);
        result.remove_edges_between(sc.u, sc.v);
        result.add_edge(sc.u, sc.v, sc.weight);
    }
    return result;
}

inline WeightedGraph apply_shortcuts(const WeightedGraph& g, const ShortcutSet& s) {
    return apply_shortcuts(g, all_pairs_shortest_with_hops(g), s);
}

struct VerifyResult {
    bool ok = false;
    bool shortcuts_valid = true;
    bool within_budget = true;
    DeficiencyReport report;                // for the graph with valid shortcuts applied
    std::vector<std::string> diagnostics;
};

/// Checks that every element is a shortcut for g, that the budget holds,
/// and that g plus the shortcuts has an empty deficient set. Invalid
/// elements are reported and skipped so that a deficiency report can be
/// returned either way.
inline VerifyResult verify_shortcut_set(const WeightedGraph& g, Params p, const ShortcutSet& s) {
    validate(p);
    VerifyResult result;
    auto table = all_pairs_shortest_with_hops(g);

    ShortcutSet valid;
    std::vector<Shortcut> seen;
    for (const Shortcut& sc : s.shortcuts) {
        std::string problem = detail::shortcut_problem(g, table, sc);
        if (problem.empty()) {
            bool dup = std::any_of(seen.begin(), seen.end(), [&](const Shortcut& o) {
                return o.u == sc.u && o.v == sc.v;
            });
            if (dup) {
                result.shortcuts_valid = false;
                result.diagnostics.push_back("duplicate endpoint pair " +
                                             detail::pair_str(sc.u, sc.v));
            } else {
                seen.push_back(sc);
                valid.shortcuts.push_back(sc);
            }
        } else {
            result.shortcuts_valid = false;
            result.diagnostics.push_back("not a shortcut: " + problem);
        }
    }
    if (s.budget && s.shortcuts.size() > *s.budget) {
        result.within_budget = false;
        result.diagnostics.push_back("budget exceeded: " + std::to_string(s.shortcuts.size()) +
                                     " > " + std::to_string(*s.budget));
    }

    WeightedGraph augmented = apply_shortcuts(g, table, valid);
    result.report = deficient_vertices(augmented, p);
    for (VertexId v : result.report.deficient)
        result.diagnostics.push_back("vertex " + std::to_string(v) + " still lacks its ball");

    result.ok = result.shortcuts_valid && result.within_budget && result.report.is_krho_graph();
    return result;
}

namespace detail {

/// Lexicographically smallest shortest-path-with-fewest-hops vertex
/// sequence from u to v, built front to back: every prefix extends to such
/// a path, so picking the smallest feasible next vertex is safe.
inline std::vector<VertexId> lex_min_fewest_hops_path(const WeightedGraph& g,
                                                      const DistanceTable& table, VertexId u,
                                                      VertexId v) {
    std::vector<VertexId> path{u};
    VertexId at = u;
    while (at != v) {
        Weight remaining_dist = table.dist(at, v);
        Hops remaining_hops = table.hops(at, v);
        VertexId best = kInfHops;
        for (const auto& arc : g.out(at)) {
            if (arc.w > remaining_dist) continue;
            if (table.dist(arc.to, v) == remaining_dist - arc.w &&
                table.hops(arc.to, v) == remaining_hops - 1 && arc.to < best)
                best = arc.to;
        }
        if (best == kInfHops) throw StructureViolation("no shortest-path successor found");
        path.push_back(best);
        at = best;
    }
    return path;
}

}  // namespace detail

/// Rewrites every shortcut spanning more than two hops in the base graph to
/// one that skips exactly one vertex: a shortcut {u,v} lying on a
/// shortest-fewest-hops path (p_0,...,p_i) becomes {p_{i-2}, p_i}. Only
/// meaningful for rho = k+1, where the rewrite preserves every ball.
inline ShortcutSet normalize_to_hop2(const WeightedGraph& g, Params p, const ShortcutSet& s) {
    validate(p);
    if (g.directed()) throw PreconditionViolated("hop-2 normalization needs an undirected graph");
    if (p.rho != p.k + 1) throw PreconditionViolated("hop-2 normalization needs rho = k+1");
    if (!verify_shortcut_set(g, p, s).ok)
        throw PreconditionViolated("input shortcut set does not verify");

    auto table = all_pairs_shortest_with_hops(g);
    ShortcutSet result;
    result.budget = s.budget;
    for (const Shortcut& sc : s.shortcuts) {
        if (table.hops(sc.u, sc.v) == 2) {
            result.shortcuts.push_back(sc);
            continue;
        }
        auto path = detail::lex_min_fewest_hops_path(g, table, sc.u, sc.v);
        VertexId a = path[path.size() - 3];
        result.shortcuts.push_back(make_shortcut(g, table, a, sc.v));
    }
    result.sort_unique();

    if (!verify_shortcut_set(g, p, result).ok)
        throw StructureViolation("hop-2 normalization broke verification");
    return result;
}

/// E_{u,v}: the deficient vertices of g whose ball appears once `candidate`
/// alone is added. Defined semantically, so it is valid for any rho.
inline std::vector<VertexId> coverage_set(const WeightedGraph& g, Params p,
                                          const Shortcut& candidate, const DeficiencyReport& x) {
    ShortcutSet single;
    single.shortcuts.push_back(candidate);
    WeightedGraph augmented = apply_shortcuts(g, single);
    std::vector<VertexId> covered;
    for (VertexId v : x.deficient) {
        auto row = shortest_with_hops_from(augmented, v);
        if (ball_certificate_from_row(row, p, v).has_ball) covered.push_back(v);
    }
    return covered;
}

}  // namespace krho
