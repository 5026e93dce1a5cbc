// solver.hpp - minimum-shortcut solvers: exact search, greedy cover
// heuristic, and the polynomial hop-budget-1 algorithm
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "krho/ball.hpp"
#include "krho/distance.hpp"
#include "krho/graph.hpp"
#include "krho/matching.hpp"
#include "krho/shortcut.hpp"

namespace krho {

struct CandidatePool {
    enum class Origin { full, kk1_restricted };
    std::vector<Shortcut> candidates;
    Origin origin = Origin::full;
};

/// Every legal shortcut of g: pairs with finite distance and hop distance
/// greater than one.
inline CandidatePool full_candidate_pool(const WeightedGraph& g, const DistanceTable& table) {
    CandidatePool pool;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v = g.directed() ? 0 : u + 1; v < g.vertex_count(); ++v)
            if (u != v && table.finite(u, v) && table.hops(u, v) > 1)
                pool.candidates.push_back(make_shortcut(g, table, u, v));
    return pool;
}

inline CandidatePool full_candidate_pool(const WeightedGraph& g) {
    return full_candidate_pool(g, all_pairs_shortest_with_hops(g));
}

struct SolveResult {
    ShortcutSet shortcuts;
    bool optimal = false;
    std::uint64_t explored = 0;  // search nodes / candidate evaluations
};

struct SearchLimits {
    std::uint64_t node_cap = 10'000'000;
    std::optional<std::size_t> size_limit;
};

namespace detail {

inline void augment_in_place(WeightedGraph& g, const Shortcut& c) {
    g.remove_edges_between(c.u, c.v);
    g.add_edge(c.u, c.v, c.weight);
}

/// Exact minimum-cardinality search: iterative deepening on solution size
/// with re-verification of the deficient set at every node.
///
/// Soundness of the pruning rests on two facts that survive cooperation
/// between shortcuts. First, distances never change, so a shortcut can lie
/// on a shortest path from x to t only if dist(x,a) + w + dist(b,t) equals
/// dist(x,t) in the base graph. Second, a vertex that is still deficient can
/// only be repaired by a future shortcut on a shortest path to one of its
/// eligible targets that is currently out of hop range. Candidates relevant
/// to no deficient vertex can therefore be skipped, every deficient vertex
/// must see at least one relevant future candidate, and the counting bound
/// ceil(|X| / max-relevance-degree) is a valid lower bound on the number of
/// shortcuts still required.
class ExactSearch {
public:
    ExactSearch(const WeightedGraph& g, Params p, std::vector<Shortcut> pool, SearchLimits limits)
        : g_(g), p_(p), pool_(std::move(pool)), limits_(limits) {
        validate(p_);
        base_ = all_pairs_shortest_with_hops(g_);
        auto x0 = deficient_vertices(g_, base_, p_);
        x0_ = x0.deficient;
        union_sets_.resize(g_.vertex_count());
        for (VertexId x : x0_) union_sets_[x] = rho_closest_union_r(base_.row(x), p_.rho, x);
    }

    SolveResult run() {
        SolveResult result;
        if (x0_.empty()) {
            result.optimal = true;
            return result;
        }
        prepare_pool();
        check_pool_feasible();

        std::size_t max_size = pool_.size();
        if (limits_.size_limit) max_size = std::min(max_size, *limits_.size_limit);

        std::vector<DistRow> rows;
        for (VertexId x : x0_) rows.push_back(base_.row(x));
        for (std::size_t alpha = 0; alpha <= max_size; ++alpha) {
            chosen_.clear();
            if (dfs(g_, x0_, rows, 0, alpha)) {
                for (std::size_t i : chosen_) result.shortcuts.shortcuts.push_back(pool_[i]);
                result.shortcuts.sort_unique();
                result.optimal = true;
                result.explored = explored_;
                if (!verify_shortcut_set(g_, p_, result.shortcuts).ok)
                    throw StructureViolation("exact search returned a non-verifying set");
                return result;
            }
        }
        throw InfeasibleWithinPool("no subset of the pool up to size " +
                                   std::to_string(max_size) + " solves the instance");
    }

private:
    void prepare_pool() {
        std::sort(pool_.begin(), pool_.end());
        pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
        for (const Shortcut& c : pool_) {
            std::string problem = shortcut_problem(g_, base_, c);
            if (!problem.empty()) throw NotAShortcut("pool element: " + problem);
        }
        // Keep only candidates that can sit on a repairing path of some
        // deficient vertex, then order by how much they fix on their own.
        std::vector<Shortcut> kept;
        for (const Shortcut& c : pool_) {
            bool relevant = false;
            for (VertexId x : x0_)
                if (relevant_to(c, x, base_.row(x))) {
                    relevant = true;
                    break;
                }
            if (relevant) kept.push_back(c);
        }
        DeficiencyReport x0report;
        x0report.deficient = x0_;
        std::vector<std::pair<std::size_t, Shortcut>> scored;
        for (const Shortcut& c : kept)
            scored.push_back({coverage_set(g_, p_, c, x0report).size(), c});
        std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        pool_.clear();
        for (auto& [cov, c] : scored) pool_.push_back(c);
    }

    void check_pool_feasible() {
        WeightedGraph all = g_;
        for (const Shortcut& c : pool_) augment_in_place(all, c);
        for (VertexId x : x0_) {
            auto row = shortest_with_hops_from(all, x);
            if (!ball_certificate_from_row(row, p_, x).has_ball)
                throw InfeasibleWithinPool("vertex " + std::to_string(x) +
                                           " cannot be repaired by this pool");
        }
    }

    bool relevant_to(const Shortcut& c, VertexId x, const DistRow& current_row) const {
        for (VertexId t : union_sets_[x]) {
            if (current_row[t].hops <= p_.k) continue;
            Weight total = base_.dist(x, t);
            if (base_.finite(x, c.u) && base_.finite(c.v, t) &&
                base_.dist(x, c.u) + c.weight + base_.dist(c.v, t) == total)
                return true;
            if (!g_.directed() && base_.finite(x, c.v) && base_.finite(c.u, t) &&
                base_.dist(x, c.v) + c.weight + base_.dist(c.u, t) == total)
                return true;
        }
        return false;
    }

    bool dfs(const WeightedGraph& cur, const std::vector<VertexId>& x,
             const std::vector<DistRow>& rows, std::size_t start, std::size_t remaining) {
        if (++explored_ > limits_.node_cap)
            throw SearchBudgetExceeded("node cap " + std::to_string(limits_.node_cap) +
                                       " exhausted");
        if (x.empty()) return true;
        if (remaining == 0) return false;

        std::vector<std::size_t> relcount(pool_.size() - start, 0);
        for (std::size_t xi = 0; xi < x.size(); ++xi) {
            bool any = false;
            for (std::size_t i = start; i < pool_.size(); ++i)
                if (relevant_to(pool_[i], x[xi], rows[xi])) {
                    ++relcount[i - start];
                    any = true;
                }
            if (!any) return false;  // nothing left can repair this vertex
        }
        std::size_t maxrel = *std::max_element(relcount.begin(), relcount.end());
        if ((x.size() + maxrel - 1) / maxrel > remaining) return false;

        for (std::size_t i = start; i < pool_.size(); ++i) {
            if (relcount[i - start] == 0) continue;
            WeightedGraph child = cur;
            augment_in_place(child, pool_[i]);
            std::vector<VertexId> cx;
            std::vector<DistRow> crows;
            for (VertexId v : x) {
                auto row = shortest_with_hops_from(child, v);
                if (!ball_certificate_from_row(row, p_, v).has_ball) {
                    cx.push_back(v);
                    crows.push_back(std::move(row));
                }
            }
            chosen_.push_back(i);
            if (dfs(child, cx, crows, i + 1, remaining - 1)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    const WeightedGraph& g_;
    Params p_;
    std::vector<Shortcut> pool_;
    SearchLimits limits_;
    DistanceTable base_;
    std::vector<VertexId> x0_;
    std::vector<std::vector<VertexId>> union_sets_;
    std::vector<std::size_t> chosen_;
    std::uint64_t explored_ = 0;
};

}  // namespace detail

/// Minimum-cardinality subset of `pool` whose application removes every
/// deficiency. Iterative deepening over the solution size; optimal.
inline SolveResult solve_exact(const WeightedGraph& g, Params p, const CandidatePool& pool,
                               SearchLimits limits = {}) {
    detail::ExactSearch search(g, p, pool.candidates, limits);
    return search.run();
}

/// Adds the candidate fixing the most currently deficient vertices until
/// none are left, recomputing the deficiency after every step. Ties break
/// lexicographically on the endpoint pair. Not optimal in general.
inline SolveResult solve_greedy(const WeightedGraph& g, Params p, const CandidatePool& pool) {
    validate(p);
    auto base = all_pairs_shortest_with_hops(g);
    std::vector<Shortcut> candidates = pool.candidates;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Shortcut& c : candidates) {
        std::string problem = detail::shortcut_problem(g, base, c);
        if (!problem.empty()) throw NotAShortcut("pool element: " + problem);
    }

    SolveResult result;
    WeightedGraph cur = g;
    std::vector<bool> used(candidates.size(), false);
    for (;;) {
        auto x = deficient_vertices(cur, p);
        if (x.deficient.empty()) break;
        std::size_t best = candidates.size();
        std::size_t best_cov = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            ++result.explored;
            WeightedGraph probe = cur;
            detail::augment_in_place(probe, candidates[i]);
            std::size_t cov = 0;
            for (VertexId v : x.deficient) {
                auto row = shortest_with_hops_from(probe, v);
                if (ball_certificate_from_row(row, p, v).has_ball) ++cov;
            }
            if (cov > best_cov) {
                best_cov = cov;
                best = i;
            }
        }
        if (best_cov == 0)
            throw Stalled("no remaining candidate repairs any deficient vertex");
        used[best] = true;
        result.shortcuts.shortcuts.push_back(candidates[best]);
        detail::augment_in_place(cur, candidates[best]);
    }
    result.shortcuts.sort_unique();
    result.optimal = false;
    return result;
}

/// Minimum shortcut set for hop budget 1. Adjacency is all that matters
/// there: a vertex needs an incident edge of exact distance weight to every
/// member of some rho-closest neighbor set.
///
/// Directed graphs decompose per vertex: everything strictly inside the
/// radius is forced and any boundary choice is as good as any other, so
/// vertices already adjacent are preferred and the rest is filled by id.
/// Undirected graphs additionally allow one edge to serve the boundary
/// demand of both endpoints when they sit at each other's radius, so the
/// boundary choices are coordinated through a degree-constrained matching.
inline SolveResult solve_k1(const WeightedGraph& g, std::uint32_t rho) {
    Params p{1, rho};
    validate(p);
    auto table = all_pairs_shortest_with_hops(g);
    const VertexId n = g.vertex_count();
    SolveResult result;
    result.optimal = true;

    struct Demand {
        Weight radius = 0;
        std::uint32_t boundary_needed = 0;  // boundary slots, before adjacency credit
    };
    std::vector<Demand> demand(n);
    std::vector<Shortcut> out;

    // Forced part: inner vertices (and, for directed graphs, the boundary
    // fill) can be resolved immediately.
    for (VertexId u = 0; u < n; ++u) {
        const DistRow& row = table.row(u);
        std::vector<VertexId> reach;
        for (VertexId v = 0; v < n; ++v)
            if (v != u && row[v].finite()) reach.push_back(v);
        std::uint32_t need = std::min<std::uint32_t>(reach.size(), rho);
        if (need == 0) continue;
        std::vector<Weight> dists;
        for (VertexId v : reach) dists.push_back(row[v].dist);
        std::nth_element(dists.begin(), dists.begin() + (need - 1), dists.end());
        Weight radius = dists[need - 1];

        std::uint32_t inner = 0;
        for (VertexId v : reach) {
            if (row[v].dist >= radius) continue;
            ++inner;
            if (row[v].hops > 1) out.push_back(Shortcut{u, v, row[v].dist});  // forced
        }
        demand[u] = {radius, need - inner};
        if (g.directed()) {
            std::uint32_t satisfied = 0;
            for (VertexId v : reach)
                if (row[v].dist == radius && row[v].hops == 1) ++satisfied;
            for (VertexId v : reach) {
                if (satisfied >= demand[u].boundary_needed) break;
                if (row[v].dist == radius && row[v].hops > 1) {
                    out.push_back(Shortcut{u, v, radius});
                    ++satisfied;
                }
            }
        }
    }

    if (g.directed()) {
        result.shortcuts.shortcuts = std::move(out);
        result.shortcuts.sort_unique();
        return result;
    }

    // Undirected: canonicalize the forced edges, credit them against the
    // boundary demands, then coordinate the remaining choices.
    for (Shortcut& s : out)
        if (s.u > s.v) std::swap(s.u, s.v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());

    std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = 0; v < n; ++v)
            if (u != v && table.finite(u, v) && table.hops(u, v) == 1) adjacent[u][v] = true;
    for (const Shortcut& s : out) adjacent[s.u][s.v] = adjacent[s.v][s.u] = true;

    std::vector<std::uint32_t> residual(n, 0);
    for (VertexId u = 0; u < n; ++u) {
        if (demand[u].boundary_needed == 0) continue;
        std::uint32_t satisfied = 0;
        for (VertexId v = 0; v < n; ++v)
            if (v != u && table.finite(u, v) && table.dist(u, v) == demand[u].radius &&
                adjacent[u][v])
                ++satisfied;
        residual[u] = demand[u].boundary_needed > satisfied
                          ? demand[u].boundary_needed - satisfied
                          : 0;
    }

    // Pairs that can serve both endpoints: non-adjacent, both still in need,
    // and each at the other's radius.
    std::vector<std::pair<VertexId, VertexId>> mutual;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (residual[u] > 0 && residual[v] > 0 && !adjacent[u][v] && table.finite(u, v) &&
                table.dist(u, v) == demand[u].radius && table.dist(u, v) == demand[v].radius)
                mutual.push_back({u, v});

    // Degree-constrained selection via vertex clones and edge gadgets:
    // selecting a pair matches both its gadget nodes outward, which is
    // exactly one unit of capacity at each endpoint.
    std::vector<int> clone_off(n + 1, 0);
    for (VertexId u = 0; u < n; ++u) clone_off[u + 1] = clone_off[u] + static_cast<int>(residual[u]);
    int total_clones = clone_off[n];
    int gadget_base = total_clones;
    MaxMatching mm(total_clones + 2 * static_cast<int>(mutual.size()));
    for (std::size_t e = 0; e < mutual.size(); ++e) {
        int e1 = gadget_base + 2 * static_cast<int>(e);
        int e2 = e1 + 1;
        mm.add_edge(e1, e2);
        auto [u, v] = mutual[e];
        for (int c = clone_off[u]; c < clone_off[u + 1]; ++c) mm.add_edge(c, e1);
        for (int c = clone_off[v]; c < clone_off[v + 1]; ++c) mm.add_edge(c, e2);
    }
    auto mate = mm.solve();
    for (std::size_t e = 0; e < mutual.size(); ++e) {
        int e1 = gadget_base + 2 * static_cast<int>(e);
        int e2 = e1 + 1;
        if (mate[e1] != -1 && mate[e1] != e2 && mate[e2] != -1 && mate[e2] != e1) {
            auto [u, v] = mutual[e];
            out.push_back(Shortcut{u, v, table.dist(u, v)});
            adjacent[u][v] = adjacent[v][u] = true;
            --residual[u];
            --residual[v];
        }
    }

    // Whatever remains can only be served one endpoint at a time; fill with
    // the smallest eligible partner ids.
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n && residual[u] > 0; ++v) {
            if (v == u || adjacent[u][v] || !table.finite(u, v)) continue;
            if (table.dist(u, v) != demand[u].radius) continue;
            VertexId a = std::min(u, v), b = std::max(u, v);
            out.push_back(Shortcut{a, b, table.dist(u, v)});
            adjacent[u][v] = adjacent[v][u] = true;
            --residual[u];
        }
        if (residual[u] > 0)
            throw StructureViolation("hop-1 boundary demand could not be met");
    }

    result.shortcuts.shortcuts = std::move(out);
    result.shortcuts.sort_unique();
    if (!verify_shortcut_set(g, p, result.shortcuts).ok)
        throw StructureViolation("hop-1 solver returned a non-verifying set");
    return result;
}

}  // namespace krho
