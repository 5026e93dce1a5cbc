// kk1.hpp - the undirected rho = k+1 pipeline: ordering-tiebroken
// constrained shortest-path trees, the forest of demand paths, the
// restricted cover instance and an optimal solver on top of it
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "krho/ball.hpp"
#include "krho/distance.hpp"
#include "krho/graph.hpp"
#include "krho/rng.hpp"
#include "krho/shortcut.hpp"
#include "krho/solver.hpp"

namespace krho {

/// Strict total order on vertex ids: rank[v] is the position of v.
struct VertexOrdering {
    std::vector<std::uint32_t> rank;

    static VertexOrdering identity(VertexId n) {
        VertexOrdering phi;
        phi.rank.resize(n);
        std::iota(phi.rank.begin(), phi.rank.end(), 0);
        return phi;
    }

    static VertexOrdering shuffled(VertexId n, Rng& rng) {
        VertexOrdering phi = identity(n);
        for (std::size_t i = n; i > 1; --i) std::swap(phi.rank[i - 1], phi.rank[rng.below(i)]);
        return phi;
    }

    void check(VertexId n) const {
        if (rank.size() != n) throw PreconditionViolated("ordering size mismatch");
        std::vector<std::uint32_t> sorted = rank;
        std::sort(sorted.begin(), sorted.end());
        for (std::uint32_t i = 0; i < n; ++i)
            if (sorted[i] != i) throw PreconditionViolated("ordering is not a bijection");
    }
};

/// Shortest-path tree with fewest hops from a deficient root to its
/// eligible closest neighbors (union mode) or to the rho ordering-smallest
/// of them (tiebroken mode). Levels equal hop distances from the root.
struct ConstrainedSPT {
    enum class Mode { union_all, tiebroken };

    VertexId root = 0;
    Mode mode = Mode::union_all;
    std::vector<std::pair<VertexId, VertexId>> edges;  // (parent, child)
    std::map<VertexId, Hops> levels;                   // includes root at 0

    Hops height() const {
        Hops h = 0;
        for (const auto& [v, level] : levels) h = std::max(h, level);
        return h;
    }

    bool is_path() const {
        std::vector<std::uint32_t> per_level(height() + 1, 0);
        for (const auto& [v, level] : levels) ++per_level[level];
        return std::all_of(per_level.begin(), per_level.end(),
                           [](std::uint32_t c) { return c == 1; });
    }

    std::vector<VertexId> vertices() const {
        std::vector<VertexId> out;
        for (const auto& [v, level] : levels) out.push_back(v);
        return out;
    }

    /// Root-to-leaf sequence; only valid when the tree is a path.
    std::vector<VertexId> path_sequence() const {
        std::vector<VertexId> seq(levels.size());
        for (const auto& [v, level] : levels) seq[level] = v;
        return seq;
    }
};

namespace detail {

inline void require_kk1(const WeightedGraph& g, Params p) {
    validate(p);
    if (g.directed()) throw PreconditionViolated("this pipeline needs an undirected graph");
    if (p.rho != p.k + 1) throw PreconditionViolated("this pipeline needs rho = k+1");
}

/// Core tree builder. Every intermediate vertex of a shortest-fewest-hops
/// path to a member is strictly closer and ordering-smaller, so the span
/// set is closed under taking such paths and a parent always exists.
/// Parents are chosen lexicographically by (dist, hops, rank) which makes
/// the tree unique.
inline ConstrainedSPT build_spt(const WeightedGraph& g, const DistanceTable& table,
                                std::uint32_t rho, VertexId root, ConstrainedSPT::Mode mode,
                                const VertexOrdering& phi) {
    const DistRow& row = table.row(root);
    std::vector<VertexId> span = rho_closest_union_r(row, rho, root);
    if (mode == ConstrainedSPT::Mode::tiebroken) {
        std::sort(span.begin(), span.end(), [&](VertexId a, VertexId b) {
            return std::tie(row[a].dist, phi.rank[a]) < std::tie(row[b].dist, phi.rank[b]);
        });
        if (span.size() > rho) span.resize(rho);
    }

    ConstrainedSPT tree;
    tree.root = root;
    tree.mode = mode;
    tree.levels[root] = 0;
    std::vector<bool> in_span(g.vertex_count(), false);
    in_span[root] = true;
    for (VertexId v : span) in_span[v] = true;

    std::sort(span.begin(), span.end(), [&](VertexId a, VertexId b) {
        return std::tie(row[a].hops, row[a].dist, a) < std::tie(row[b].hops, row[b].dist, b);
    });
    for (VertexId v : span) {
        VertexId parent = kInfHops;
        auto parent_key = [&](VertexId x) {
            return std::make_tuple(row[x].dist, row[x].hops, phi.rank[x]);
        };
        for (const auto& arc : g.out(v)) {
            VertexId x = arc.to;
            if (!in_span[x]) continue;
            if (!row[x].finite() && x != root) continue;
            if (row[x].dist + arc.w != row[v].dist || row[x].hops + 1 != row[v].hops) continue;
            if (parent == kInfHops || parent_key(x) < parent_key(parent)) parent = x;
        }
        if (parent == kInfHops)
            throw StructureViolation("no tree parent for vertex " + std::to_string(v));
        tree.edges.push_back({parent, v});
        tree.levels[v] = row[v].hops;
    }
    return tree;
}

inline bool is_deficient(const DistanceTable& table, Params p, VertexId v) {
    return !ball_certificate_from_row(table.row(v), p, v).has_ball;
}

}  // namespace detail

inline ConstrainedSPT constrained_spt(const WeightedGraph& g, const DistanceTable& table,
                                      Params p, VertexId v, ConstrainedSPT::Mode mode,
                                      const VertexOrdering& phi) {
    detail::require_kk1(g, p);
    phi.check(g.vertex_count());
    if (!detail::is_deficient(table, p, v))
        throw NotDeficient("vertex " + std::to_string(v) + " already has its ball");
    auto tree = detail::build_spt(g, table, p.rho, v, mode, phi);
    if (mode == ConstrainedSPT::Mode::tiebroken && !tree.is_path())
        throw StructureViolation("tiebroken tree is not a path");
    return tree;
}

inline ConstrainedSPT constrained_spt(const WeightedGraph& g, const DistanceTable& table,
                                      Params p, VertexId v, ConstrainedSPT::Mode mode) {
    return constrained_spt(g, table, p, v, mode, VertexOrdering::identity(g.vertex_count()));
}

/// B(v): vertices of the (k+1)-constrained tree missing from the
/// k-constrained tree; the eligible boundary picks of v.
struct TiebreakCandidates {
    VertexId vertex = 0;
    std::vector<VertexId> candidates;  // sorted
};

inline TiebreakCandidates tiebreak_candidates(const WeightedGraph& g, const DistanceTable& table,
                                              Params p, VertexId v) {
    detail::require_kk1(g, p);
    if (!detail::is_deficient(table, p, v))
        throw NotDeficient("vertex " + std::to_string(v) + " already has its ball");
    auto id = VertexOrdering::identity(g.vertex_count());
    auto small = detail::build_spt(g, table, p.k, v, ConstrainedSPT::Mode::union_all, id);
    auto large = detail::build_spt(g, table, p.k + 1, v, ConstrainedSPT::Mode::union_all, id);
    TiebreakCandidates out;
    out.vertex = v;
    for (const auto& [u, level] : large.levels)
        if (!small.levels.contains(u)) out.candidates.push_back(u);
    return out;
}

/// Union of the tiebroken demand paths of all deficient vertices. The
/// structural guarantees (k-trees are paths, (k+1)-trees have height k+1,
/// tiebroken trees are paths, the union is a forest) are checked and any
/// violation is fatal: it means a bug, not bad input.
struct RestrictedSubgraph {
    std::vector<std::pair<VertexId, VertexId>> edges;      // canonical, sorted
    std::map<VertexId, std::vector<VertexId>> demand_paths;  // root -> sequence
};

inline RestrictedSubgraph restricted_subgraph(const WeightedGraph& g, Params p,
                                              const VertexOrdering& phi) {
    detail::require_kk1(g, p);
    phi.check(g.vertex_count());
    auto table = all_pairs_shortest_with_hops(g);
    auto x = deficient_vertices(g, table, p);

    RestrictedSubgraph rsg;
    for (VertexId v : x.deficient) {
        auto small = detail::build_spt(g, table, p.k, v, ConstrainedSPT::Mode::union_all, phi);
        if (!small.is_path())
            throw StructureViolation("k-constrained tree of a deficient vertex is not a path");
        auto large = detail::build_spt(g, table, p.k + 1, v, ConstrainedSPT::Mode::union_all, phi);
        if (large.height() != p.k + 1)
            throw StructureViolation("(k+1)-constrained tree height is not k+1");
        auto tb = detail::build_spt(g, table, p.k + 1, v, ConstrainedSPT::Mode::tiebroken, phi);
        if (!tb.is_path()) throw StructureViolation("tiebroken tree is not a path");
        rsg.demand_paths[v] = tb.path_sequence();
        for (auto [a, b] : tb.edges)
            rsg.edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(rsg.edges.begin(), rsg.edges.end());
    rsg.edges.erase(std::unique(rsg.edges.begin(), rsg.edges.end()), rsg.edges.end());

    // Forest check by union-find.
    std::vector<VertexId> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (auto [a, b] : rsg.edges) {
        VertexId ra = find(a), rb = find(b);
        if (ra == rb) throw StructureViolation("restricted subgraph contains a cycle");
        parent[ra] = rb;
    }
    return rsg;
}

/// Set-cover encoding over the demand paths: one candidate per two-hop
/// window of a demand path, each mapped to the deficient vertices it
/// repairs on its own.
struct CoverInstance {
    std::vector<VertexId> universe;  // the deficient set, sorted
    struct Entry {
        Shortcut candidate;
        std::vector<VertexId> covered;
    };
    std::vector<Entry> sets;
};

inline CoverInstance build_cover_instance(const WeightedGraph& g, Params p,
                                          const VertexOrdering& phi,
                                          const RestrictedSubgraph& rsg) {
    detail::require_kk1(g, p);
    auto table = all_pairs_shortest_with_hops(g);
    auto x = deficient_vertices(g, table, p);

    CoverInstance instance;
    instance.universe = x.deficient;

    std::vector<Shortcut> candidates;
    for (const auto& [root, seq] : rsg.demand_paths) {
        for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
            VertexId a = seq[i], b = seq[i + 2];
            if (table.hops(a, b) != 2)
                throw StructureViolation("demand-path window does not span two hops");
            candidates.push_back(make_shortcut(g, table, a, b));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Shortcut& c : candidates)
        instance.sets.push_back({c, coverage_set(g, p, c, x)});

    for (VertexId v : instance.universe) {
        bool covered = std::any_of(instance.sets.begin(), instance.sets.end(), [&](const auto& e) {
            return std::binary_search(e.covered.begin(), e.covered.end(), v);
        });
        if (!covered)
            throw StructureViolation("deficient vertex " + std::to_string(v) +
                                     " is covered by no demand-path candidate");
    }
    return instance;
}

namespace detail {

/// Exact minimum set cover; branches on an uncovered element with the
/// fewest containing sets.
class CoverSearch {
public:
    CoverSearch(const CoverInstance& instance) : instance_(instance) {
        for (std::size_t i = 0; i < instance.universe.size(); ++i)
            index_of_[instance.universe[i]] = i;
        sets_of_element_.resize(instance.universe.size());
        for (std::size_t s = 0; s < instance.sets.size(); ++s)
            for (VertexId v : instance.sets[s].covered)
                sets_of_element_[index_of_.at(v)].push_back(s);
    }

    std::vector<std::size_t> run(std::uint64_t* nodes_out) {
        cover_count_.assign(instance_.universe.size(), 0);
        covered_ = 0;
        best_.clear();
        have_best_ = false;
        recurse();
        if (!have_best_) throw StructureViolation("cover instance is infeasible");
        if (nodes_out) *nodes_out = nodes_;
        return best_;
    }

private:
    void recurse() {
        ++nodes_;
        if (covered_ == cover_count_.size()) {
            if (!have_best_ || chosen_.size() < best_.size()) {
                best_ = chosen_;
                have_best_ = true;
            }
            return;
        }
        // At least one more set is required from here.
        if (have_best_ && chosen_.size() + 1 >= best_.size()) return;

        std::size_t pick = cover_count_.size();
        std::size_t fewest = instance_.sets.size() + 1;
        for (std::size_t e = 0; e < cover_count_.size(); ++e)
            if (cover_count_[e] == 0 && sets_of_element_[e].size() < fewest) {
                fewest = sets_of_element_[e].size();
                pick = e;
            }
        std::vector<std::size_t> options = sets_of_element_[pick];
        std::sort(options.begin(), options.end(), [&](std::size_t a, std::size_t b) {
            return instance_.sets[a].covered.size() > instance_.sets[b].covered.size();
        });
        for (std::size_t s : options) {
            apply(s, +1);
            chosen_.push_back(s);
            recurse();
            chosen_.pop_back();
            apply(s, -1);
        }
    }

    void apply(std::size_t s, int delta) {
        for (VertexId v : instance_.sets[s].covered) {
            std::size_t e = index_of_.at(v);
            if (delta > 0) {
                if (cover_count_[e]++ == 0) ++covered_;
            } else {
                if (--cover_count_[e] == 0) --covered_;
            }
        }
    }

    const CoverInstance& instance_;
    std::map<VertexId, std::size_t> index_of_;
    std::vector<std::vector<std::size_t>> sets_of_element_;
    std::vector<std::uint32_t> cover_count_;
    std::size_t covered_ = 0;
    std::vector<std::size_t> chosen_, best_;
    bool have_best_ = false;
    std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Optimal solver for undirected instances with rho = k+1: restrict the
/// candidates to the two-hop windows of the ordering-tiebroken demand
/// paths, then cover the deficient set exactly. The optimum is invariant
/// under the choice of ordering.
inline SolveResult solve_kk1(const WeightedGraph& g, Params p, const VertexOrdering& phi) {
    detail::require_kk1(g, p);
    phi.check(g.vertex_count());

    SolveResult result;
    auto table = all_pairs_shortest_with_hops(g);
    auto x = deficient_vertices(g, table, p);
    if (x.deficient.empty()) {
        result.optimal = true;
        return result;
    }

    auto rsg = restricted_subgraph(g, p, phi);
    auto instance = build_cover_instance(g, p, phi, rsg);
    detail::CoverSearch search(instance);
    auto chosen = search.run(&result.explored);
    for (std::size_t s : chosen) result.shortcuts.shortcuts.push_back(instance.sets[s].candidate);
    result.shortcuts.sort_unique();
    result.optimal = true;
    if (!verify_shortcut_set(g, p, result.shortcuts).ok)
        throw StructureViolation("restricted cover solution does not verify");
    return result;
}

inline SolveResult solve_kk1(const WeightedGraph& g, Params p) {
    return solve_kk1(g, p, VertexOrdering::identity(g.vertex_count()));
}

}  // namespace krho
