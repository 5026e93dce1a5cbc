// selftest.hpp - oracle-equivalence and structure suites
//
// Each suite draws its own seeded instance stream, checks one contract of
// the library against a first-principles reference, and reports the first
// counterexample it finds. The command-line self-test and the acceptance
// harness both run these with their own iteration counts.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "krho/hardness.hpp"
#include "krho/io.hpp"
#include "krho/kk1.hpp"
#include "krho/oracle.hpp"
#include "krho/rng.hpp"
#include "krho/solver.hpp"

namespace krho::selftest {

struct Outcome {
    std::string name;
    bool pass = true;
    std::string detail;
};

namespace detail {

inline std::vector<oracle::ShortcutEdge> as_oracle_pool(const CandidatePool& pool) {
    std::vector<oracle::ShortcutEdge> out;
    for (const Shortcut& c : pool.candidates) out.push_back({c.u, c.v, c.weight});
    return out;
}

inline ShortcutSet random_candidate_subset(const CandidatePool& pool, Rng& rng,
                                           std::uint32_t pct) {
    ShortcutSet s;
    for (const Shortcut& c : pool.candidates)
        if (rng.percent(pct)) s.shortcuts.push_back(c);
    return s;
}

/// Random subset extended with shuffled candidates until it verifies.
inline ShortcutSet random_valid_set(const WeightedGraph& g, Params p, Rng& rng) {
    auto pool = full_candidate_pool(g).candidates;
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    ShortcutSet s;
    s.shortcuts.assign(pool.begin(), pool.begin() + rng.below(pool.size() + 1));
    while (!verify_shortcut_set(g, p, s).ok && s.shortcuts.size() < pool.size())
        s.shortcuts.push_back(pool[s.shortcuts.size()]);
    s.sort_unique();
    return s;
}

inline std::string describe(const WeightedGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

/// Connected sparse instance biased toward long hop distances: a random
/// vertex permutation joined into a path, plus a few chords. Dense uniform
/// graphs almost never have deficient vertices at rho = k+1.
inline WeightedGraph deficiency_rich_graph(VertexId n, std::uint32_t chord_pct, Weight max_weight,
                                           Rng& rng) {
    WeightedGraph g(false, n);
    std::vector<VertexId> order(n);
    for (VertexId i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    for (VertexId i = 0; i + 1 < n; ++i) {
        g.add_edge(order[i], order[i + 1], rng.range(1, max_weight));
        used[order[i]][order[i + 1]] = used[order[i + 1]][order[i]] = true;
    }
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (!used[u][v] && rng.percent(chord_pct))
                g.add_edge(u, v, rng.range(1, max_weight));
    return g;
}

}  // namespace detail

/// Dijkstra table equals exhaustive simple-path enumeration.
inline Outcome distance_oracle(std::uint64_t seed, int graphs) {
    Outcome out{"distance table vs exhaustive path enumeration"};
    Rng rng(seed);
    for (int i = 0; i < graphs; ++i) {
        VertexId n = static_cast<VertexId>(rng.range(1, 6));
        auto g = random_graph(n, rng.percent(50), 50, 3, rng);
        if (all_pairs_shortest_with_hops(g) != oracle::exhaustive_distance_table(g)) {
            out.pass = false;
            out.detail = "mismatch on instance " + std::to_string(i) + ":\n" + detail::describe(g);
            return out;
        }
    }
    out.detail = std::to_string(graphs) + " graphs";
    return out;
}

/// Counting-based certificates equal the definitional subset check for all
/// k in 1..3 and k < rho <= k+3.
inline Outcome ball_equivalence(std::uint64_t seed, int graphs) {
    Outcome out{"ball certificates vs definitional check"};
    Rng rng(seed);
    for (int i = 0; i < graphs; ++i) {
        VertexId n = static_cast<VertexId>(rng.range(1, 6));
        auto g = random_graph(n, rng.percent(50), 50, 3, rng);
        auto t = all_pairs_shortest_with_hops(g);
        for (Hops k = 1; k <= 3; ++k)
            for (std::uint32_t rho = k + 1; rho <= k + 3; ++rho)
                for (VertexId u = 0; u < n; ++u) {
                    Params p{k, rho};
                    if (ball_certificate(g, t, p, u).has_ball !=
                        oracle::has_ball_bruteforce(t, p, u)) {
                        out.pass = false;
                        out.detail = "vertex " + std::to_string(u) + ", k=" + std::to_string(k) +
                                     ", rho=" + std::to_string(rho) + ":\n" + detail::describe(g);
                        return out;
                    }
                }
    }
    out.detail = std::to_string(graphs) + " graphs x 9 parameter pairs";
    return out;
}

/// Applying legal shortcut sets never changes any pairwise distance.
inline Outcome distance_preservation(std::uint64_t seed, int pairs) {
    Outcome out{"distance preservation under shortcut application"};
    Rng rng(seed);
    int done = 0;
    while (done < pairs) {
        VertexId n = static_cast<VertexId>(rng.range(2, 7));
        auto g = random_graph(n, rng.percent(50), 50, 3, rng);
        auto t = all_pairs_shortest_with_hops(g);
        auto pool = full_candidate_pool(g, t);
        if (pool.candidates.empty()) continue;
        auto s = detail::random_candidate_subset(pool, rng, 35);
        auto t2 = all_pairs_shortest_with_hops(apply_shortcuts(g, t, s));
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = 0; v < n; ++v)
                if (t.dist(u, v) != t2.dist(u, v)) {
                    out.pass = false;
                    out.detail = "pair (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") changed:\n" + detail::describe(g);
                    return out;
                }
        ++done;
    }
    out.detail = std::to_string(pairs) + " (graph, set) pairs";
    return out;
}

/// rho <= k instances need no shortcuts from any solver.
inline Outcome trivial_regimes(std::uint64_t seed, int samples) {
    Outcome out{"rho <= k solves to the empty set"};
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        VertexId n = static_cast<VertexId>(rng.range(2, 6));
        auto g = random_graph(n, rng.percent(50), 50, 3, rng);
        Hops k = static_cast<Hops>(rng.range(1, 3));
        Params p{k, static_cast<std::uint32_t>(rng.range(1, k))};
        if (solve_exact(g, p, full_candidate_pool(g)).shortcuts.size() != 0 ||
            solve_greedy(g, p, full_candidate_pool(g)).shortcuts.size() != 0) {
            out.pass = false;
            out.detail = detail::describe(g);
            return out;
        }
    }
    out.detail = std::to_string(samples) + " instances";
    return out;
}

/// Hop-budget-1 solver equals subset enumeration.
inline Outcome k1_optimality(std::uint64_t seed, int instances) {
    Outcome out{"hop-budget-1 solver vs exhaustive optimum"};
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        VertexId n = static_cast<VertexId>(rng.range(2, i % 7 == 0 ? 7 : 6));
        auto g = random_graph(n, rng.percent(50), 55, 3, rng);
        std::uint32_t rho = static_cast<std::uint32_t>(rng.range(2, 5));
        auto pool = full_candidate_pool(g);
        auto r = solve_k1(g, rho);
        // Enumerating past the solver's answer proves nothing new; capping
        // there bounds the cost and still catches any non-minimal output.
        std::size_t expect = oracle::min_shortcut_size_bruteforce(
            g, Params{1, rho}, detail::as_oracle_pool(pool), r.shortcuts.size());
        if (r.shortcuts.size() != expect || !verify_shortcut_set(g, Params{1, rho}, r.shortcuts).ok) {
            out.pass = false;
            out.detail = "rho=" + std::to_string(rho) + ": got " +
                         std::to_string(r.shortcuts.size()) + ", expected " +
                         std::to_string(expect) + "\n" + detail::describe(g);
            return out;
        }
    }
    out.detail = std::to_string(instances) + " instances";
    return out;
}

/// Exact solver equals subset enumeration over the full pool.
inline Outcome exact_vs_enumeration(std::uint64_t seed, int instances) {
    Outcome out{"exact solver vs subset enumeration"};
    Rng rng(seed);
    int done = 0;
    while (done < instances) {
        VertexId n = static_cast<VertexId>(rng.range(2, done % 8 == 0 ? 7 : 6));
        auto g = random_graph(n, rng.percent(50), 50, 3, rng);
        Hops k = static_cast<Hops>(rng.range(1, 3));
        Params p{k, static_cast<std::uint32_t>(rng.range(k + 1, k + 3))};
        auto pool = full_candidate_pool(g);
        std::size_t expect = oracle::min_shortcut_size_bruteforce(
            g, p, detail::as_oracle_pool(pool), pool.candidates.size());
        std::size_t got = solve_exact(g, p, pool).shortcuts.size();
        if (got != expect) {
            out.pass = false;
            out.detail = "k=" + std::to_string(k) + ", rho=" + std::to_string(p.rho) + ": got " +
                         std::to_string(got) + ", expected " + std::to_string(expect) + "\n" +
                         detail::describe(g);
            return out;
        }
        ++done;
    }
    out.detail = std::to_string(instances) + " instances";
    return out;
}

/// Path/height/forest structure of the rho = k+1 pipeline; the library
/// throws on any violation, so running it is the check.
inline Outcome structure_suite(std::uint64_t seed, int graphs) {
    Outcome out{"constrained-tree and forest structure"};
    Rng rng(seed);
    for (int i = 0; i < graphs; ++i) {
        VertexId n = static_cast<VertexId>(rng.range(4, 10));
        auto g = i % 3 == 0 ? random_graph(n, false, 40, 4, rng)
                            : detail::deficiency_rich_graph(n, 8, 4, rng);
        Hops k = static_cast<Hops>(rng.range(2, 3));
        auto phi = VertexOrdering::shuffled(n, rng);
        try {
            restricted_subgraph(g, Params{k, k + 1}, phi);
        } catch (const StructureViolation& e) {
            out.pass = false;
            out.detail = std::string(e.what()) + "\n" + detail::describe(g);
            return out;
        }
    }
    out.detail = std::to_string(graphs) + " graphs";
    return out;
}

/// Hop-2 normalization: spans become two, sizes never grow, sets verify.
inline Outcome normalization_suite(std::uint64_t seed, int sets) {
    Outcome out{"hop-2 normalization of valid sets"};
    Rng rng(seed);
    int done = 0;
    while (done < sets) {
        VertexId n = static_cast<VertexId>(rng.range(4, 8));
        auto g = done % 3 == 0 ? random_graph(n, false, 45, 3, rng)
                               : detail::deficiency_rich_graph(n, 8, 3, rng);
        Hops k = static_cast<Hops>(rng.range(2, 3));
        Params p{k, k + 1};
        if (full_candidate_pool(g).candidates.empty()) continue;
        auto s = detail::random_valid_set(g, p, rng);
        if (!verify_shortcut_set(g, p, s).ok) continue;
        auto t = all_pairs_shortest_with_hops(g);
        ShortcutSet norm;
        try {
            norm = normalize_to_hop2(g, p, s);
        } catch (const Error& e) {
            out.pass = false;
            out.detail = std::string(e.what()) + "\n" + detail::describe(g);
            return out;
        }
        bool sizes = norm.shortcuts.size() <= s.shortcuts.size();
        bool spans = std::all_of(norm.shortcuts.begin(), norm.shortcuts.end(),
                                 [&](const Shortcut& c) { return t.hops(c.u, c.v) == 2; });
        if (!sizes || !spans) {
            out.pass = false;
            out.detail = detail::describe(g);
            return out;
        }
        ++done;
    }
    out.detail = std::to_string(sets) + " valid sets";
    return out;
}

/// The restricted rho = k+1 solver matches the unrestricted exact optimum
/// and is invariant under the vertex ordering.
inline Outcome ordering_invariance(std::uint64_t seed, int instances, int orderings) {
    Outcome out{"restricted solver vs full search across orderings"};
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        VertexId n = static_cast<VertexId>(rng.range(5, 9));
        auto g = i % 3 == 0 ? random_graph(n, false, 45, 3, rng)
                            : detail::deficiency_rich_graph(n, 5, 3, rng);
        Hops k = static_cast<Hops>(rng.range(2, 3));
        Params p{k, k + 1};
        std::size_t expect = solve_exact(g, p, full_candidate_pool(g)).shortcuts.size();
        if (solve_kk1(g, p).shortcuts.size() != expect) {
            out.pass = false;
            out.detail = "identity ordering differs from the full optimum\n" + detail::describe(g);
            return out;
        }
        for (int r = 0; r < orderings; ++r) {
            auto phi = VertexOrdering::shuffled(n, rng);
            if (solve_kk1(g, p, phi).shortcuts.size() != expect) {
                out.pass = false;
                out.detail = "ordering changed the optimum\n" + detail::describe(g);
                return out;
            }
        }
    }
    out.detail = std::to_string(instances) + " instances x " + std::to_string(orderings + 1) +
                 " orderings";
    return out;
}

/// Minimum shortcut count on generated hitting-set instances vs the
/// brute-force hitting number.
inline Outcome reduction_value_correspondence(std::uint64_t seed, int hypergraphs_per_combo,
                                              bool directed) {
    Outcome out{std::string("hitting-instance value correspondence, ") +
                (directed ? "directed" : "undirected")};
    Rng rng(seed);
    const std::pair<Hops, std::uint32_t> combos[] = {{2, 4}, {2, 5}, {3, 5}};
    int matched = 0, total = 0;
    for (auto [k, rho] : combos) {
        const std::uint32_t d = rho - k;
        for (int i = 0; i < hypergraphs_per_combo; ++i) {
            const std::uint32_t n = static_cast<std::uint32_t>(rng.range(2, 6));
            auto h = random_hypergraph(
                n, static_cast<std::uint32_t>(rng.range(0, 5)),
                static_cast<std::uint32_t>(rng.range(1, std::min(d, n))), rng.next());
            auto layout = reduce_hitting_set(h, k, rho, directed);
            std::size_t tau = oracle::min_hitting_bruteforce(layout.padded.vertex_count,
                                                             layout.padded.hyperedges);
            std::size_t opt =
                solve_exact(layout.graph, layout.params, full_candidate_pool(layout.graph))
                    .shortcuts.size();
            ++total;
            if (opt == tau) {
                ++matched;
            } else if (out.pass) {
                out.pass = false;
                std::ostringstream os;
                os << "first mismatch: k=" << k << " rho=" << rho << " tau=" << tau
                   << " optimum=" << opt << ", hypergraph n=" << h.vertex_count << " edges=[";
                for (const auto& e : h.hyperedges) {
                    os << "{";
                    for (std::uint32_t v : e) os << v << " ";
                    os << "}";
                }
                os << "]";
                out.detail = os.str();
            }
        }
    }
    std::string stats = std::to_string(matched) + "/" + std::to_string(total) + " exact matches";
    out.detail = out.detail.empty() ? stats : stats + "; " + out.detail;
    return out;
}

/// X equals exactly the per-hyperedge path starts on generated instances,
/// and each start has its rho-1 nearest in hop range with one boundary slot
/// open; directed instances also pin the raw within-k count and the
/// uniqueness of the closest-neighbor set.
inline Outcome deficiency_localization(std::uint64_t seed, int hypergraphs) {
    Outcome out{"deficiency localization in generated instances"};
    Rng rng(seed);
    for (int i = 0; i < hypergraphs; ++i) {
        auto h = random_hypergraph(static_cast<std::uint32_t>(rng.range(2, 6)),
                                   static_cast<std::uint32_t>(rng.range(0, 5)), 2, rng.next());
        for (bool directed : {true, false}) {
            auto layout = reduce_hitting_set(h, 2, 4, directed);
            auto table = all_pairs_shortest_with_hops(layout.graph);
            auto x = deficient_vertices(layout.graph, table, layout.params);
            std::vector<VertexId> starts;
            for (std::size_t e = 0; e < layout.padded.hyperedges.size(); ++e)
                starts.push_back(layout.s_of(e));
            std::sort(starts.begin(), starts.end());
            starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
            bool ok = x.deficient == starts;
            for (std::size_t e = 0; ok && e < layout.padded.hyperedges.size(); ++e) {
                VertexId s = layout.s_of(e);
                auto cert = ball_certificate(layout.graph, table, layout.params, s);
                ok = cert.inner_ok && cert.boundary_within_k == 0 && cert.boundary_needed == 1;
                if (ok && directed) {
                    std::uint32_t within = 0;
                    for (VertexId v = 0; v < layout.graph.vertex_count(); ++v)
                        if (v != s && table.finite(s, v) && table.hops(s, v) <= layout.params.k)
                            ++within;
                    ok = within == layout.params.rho - 1 &&
                         rho_closest_union(layout.graph, table, layout.params, s).size() ==
                             layout.params.rho;
                }
            }
            if (!ok) {
                out.pass = false;
                out.detail = std::string(directed ? "directed" : "undirected") + " instance " +
                             std::to_string(i);
                return out;
            }
        }
    }
    out.detail = std::to_string(hypergraphs) + " hypergraphs, both orientations";
    return out;
}

/// Directed tiebreak instances: localization, boundary counts, and the
/// hitting set read off an optimal solution has minimum size.
inline Outcome tiebreak_sanity(std::uint64_t seed, int hypergraphs) {
    Outcome out{"tiebreak-instance sanity and extraction"};
    Rng rng(seed);
    const std::pair<Hops, std::uint32_t> combos[] = {{2, 5}, {2, 6}, {3, 6}};
    for (int i = 0; i < hypergraphs; ++i) {
        auto [k, rho] = combos[i % 3];
        const std::uint32_t d = (rho - k + 1) / 2;
        auto h = random_hypergraph(static_cast<std::uint32_t>(rng.range(2, 5)),
                                   static_cast<std::uint32_t>(rng.range(0, 3)), d, rng.next());
        auto layout = reduce_tiebreaker(h, k, rho, true);
        auto table = all_pairs_shortest_with_hops(layout.graph);
        auto x = deficient_vertices(layout.graph, table, layout.params);
        std::vector<VertexId> starts;
        for (std::size_t e = 0; e < layout.padded.hyperedges.size(); ++e)
            starts.push_back(layout.s_of(e));
        std::sort(starts.begin(), starts.end());
        if (x.deficient != starts) {
            out.pass = false;
            out.detail = "localization failed on instance " + std::to_string(i);
            return out;
        }
        for (std::size_t e = 0; e < layout.padded.hyperedges.size(); ++e) {
            VertexId s = layout.s_of(e);
            std::uint32_t within = 0;
            for (VertexId v = 0; v < layout.graph.vertex_count(); ++v)
                if (v != s && table.finite(s, v) && table.hops(s, v) <= k) ++within;
            if (within != rho - 1) {
                out.pass = false;
                out.detail = "within-k count mismatch on instance " + std::to_string(i);
                return out;
            }
        }
        auto opt = solve_exact(layout.graph, layout.params, full_candidate_pool(layout.graph));
        std::size_t tau = oracle::min_hitting_bruteforce(layout.padded.vertex_count,
                                                         layout.padded.hyperedges);
        // Read the per-start neighbor-set choices off the solved graph.
        auto augmented = apply_shortcuts(layout.graph, opt.shortcuts);
        std::vector<std::vector<VertexId>> assignments;
        for (std::size_t e = 0; e < layout.padded.hyperedges.size(); ++e) {
            VertexId s = layout.s_of(e);
            auto row = shortest_with_hops_from(augmented, s);
            auto cert = ball_certificate_from_row(row, layout.params, s);
            std::vector<VertexId> pick;
            for (VertexId v = 0; v < augmented.vertex_count(); ++v)
                if (v != s && row[v].finite() && row[v].dist < cert.radius) pick.push_back(v);
            std::uint32_t slots = cert.boundary_needed;
            for (VertexId v = 0; v < augmented.vertex_count() && slots > 0; ++v)
                if (v != s && row[v].finite() && row[v].dist == cert.radius &&
                    row[v].hops <= layout.params.k) {
                    pick.push_back(v);
                    --slots;
                }
            assignments.push_back(std::move(pick));
        }
        auto u = extract_hitting_from_tiebreak(layout, assignments);
        if (!hits_all(layout.padded, u.vertices) || u.vertices.size() != tau ||
            opt.shortcuts.size() != tau) {
            out.pass = false;
            out.detail = "extraction mismatch on instance " + std::to_string(i) + ": tau=" +
                         std::to_string(tau) + " optimum=" + std::to_string(opt.shortcuts.size()) +
                         " extracted=" + std::to_string(u.vertices.size());
            return out;
        }
    }
    out.detail = std::to_string(hypergraphs) + " directed instances";
    return out;
}

/// write-then-parse is the identity on canonical instances of every format.
inline Outcome roundtrip_formats(std::uint64_t seed, int instances) {
    Outcome out{"format round trips"};
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        VertexId n = static_cast<VertexId>(rng.range(1, 8));
        auto g = random_graph(n, rng.percent(50), 50, 4, rng);
        g.canonicalize();
        std::ostringstream os;
        write_graph(os, g);
        std::istringstream is(os.str());
        if (!(parse_graph(is) == g)) {
            out.pass = false;
            out.detail = "graph round trip failed:\n" + os.str();
            return out;
        }

        const std::uint32_t hn = static_cast<std::uint32_t>(rng.range(1, 6));
        auto h = random_hypergraph(
            hn, static_cast<std::uint32_t>(rng.range(0, 5)),
            static_cast<std::uint32_t>(rng.range(1, std::min<std::uint32_t>(3, hn))), rng.next());
        std::ostringstream hs;
        write_hypergraph(hs, h);
        std::istringstream his(hs.str());
        auto h2 = parse_hypergraph(his);
        if (h2.vertex_count != h.vertex_count || h2.hyperedges != h.hyperedges) {
            out.pass = false;
            out.detail = "hypergraph round trip failed:\n" + hs.str();
            return out;
        }

        auto pool = full_candidate_pool(g);
        auto s = detail::random_candidate_subset(pool, rng, 40);
        s.sort_unique();
        std::ostringstream ss;
        write_shortcuts(ss, s);
        std::istringstream sis(ss.str());
        if (!(parse_shortcuts(sis).shortcuts == s.shortcuts)) {
            out.pass = false;
            out.detail = "shortcut round trip failed:\n" + ss.str();
            return out;
        }
    }
    out.detail = std::to_string(instances) + " instances per format";
    return out;
}

/// The standard bundle behind `selftest`.
inline std::vector<Outcome> run_all(std::uint64_t seed, bool quick) {
    const int scale = quick ? 1 : 4;
    std::vector<Outcome> results;
    results.push_back(distance_oracle(seed + 1, 250 * scale));
    results.push_back(ball_equivalence(seed + 2, 120 * scale));
    results.push_back(distance_preservation(seed + 3, 125 * scale));
    results.push_back(trivial_regimes(seed + 4, 50 * scale));
    results.push_back(k1_optimality(seed + 5, 50 * scale));
    results.push_back(exact_vs_enumeration(seed + 6, 50 * scale));
    results.push_back(structure_suite(seed + 7, 125 * scale));
    results.push_back(normalization_suite(seed + 8, 50 * scale));
    results.push_back(ordering_invariance(seed + 9, 20 * scale, 5));
    results.push_back(reduction_value_correspondence(seed + 10, 4 * scale, true));
    results.push_back(deficiency_localization(seed + 11, 12 * scale));
    results.push_back(tiebreak_sanity(seed + 12, 8 * scale));
    results.push_back(roundtrip_formats(seed + 13, 250 * scale));
    return results;
}

}  // namespace krho::selftest
