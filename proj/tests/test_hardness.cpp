#include <catch2/catch_amalgamated.hpp>

#include "krho/hardness.hpp"
#include "krho/oracle.hpp"
#include "krho/solver.hpp"

using namespace krho;

namespace {

Hypergraph triangle() {
    Hypergraph h;
    h.vertex_count = 3;
    h.hyperedges = {{0, 1}, {1, 2}, {0, 2}};
    return h;
}

std::size_t tau(const Hypergraph& h) {
    return oracle::min_hitting_bruteforce(h.vertex_count, h.hyperedges);
}

std::size_t shortcut_optimum(const ReductionLayout& layout) {
    return solve_exact(layout.graph, layout.params, full_candidate_pool(layout.graph))
        .shortcuts.size();
}

/// rho-closest neighbor sets for each path start induced by a solved graph:
/// everything strictly inside the radius plus the in-range boundary picks.
std::vector<std::vector<VertexId>> induced_assignments(const ReductionLayout& layout,
                                                       const ShortcutSet& solution) {
    auto augmented = apply_shortcuts(layout.graph, solution);
    std::vector<std::vector<VertexId>> out;
    for (std::size_t e = 0; e < layout.padded.hyperedges.size(); ++e) {
        VertexId s = layout.s_of(e);
        auto row = shortest_with_hops_from(augmented, s);
        auto cert = ball_certificate_from_row(row, layout.params, s);
        REQUIRE(cert.has_ball);
        std::vector<VertexId> assignment;
        for (VertexId v = 0; v < augmented.vertex_count(); ++v)
            if (v != s && row[v].finite() && row[v].dist < cert.radius) assignment.push_back(v);
        std::uint32_t slots = cert.boundary_needed;
        for (VertexId v = 0; v < augmented.vertex_count() && slots > 0; ++v)
            if (v != s && row[v].finite() && row[v].dist == cert.radius && row[v].hops <= layout.params.k) {
                assignment.push_back(v);
                --slots;
            }
        out.push_back(std::move(assignment));
    }
    return out;
}

}  // namespace

TEST_CASE("padding fills hyperedges and preserves the hitting value") {
    Hypergraph h;
    h.vertex_count = 2;
    h.hyperedges = {{0}, {0, 1}};
    auto padded = pad_hypergraph(h, 2);
    CHECK(padded.vertex_count == 3);  // one fresh pad vertex, |V| reaches d+1
    CHECK(padded.hyperedges == std::vector<std::vector<std::uint32_t>>{{0, 2}, {0, 1}});
    CHECK(tau(padded) == tau(h));

    // Rank-d input with enough vertices is untouched.
    auto tri = pad_hypergraph(triangle(), 2);
    CHECK(tri.vertex_count == 3);
    CHECK(tri.hyperedges == triangle().hyperedges);

    Hypergraph empty;
    empty.vertex_count = 2;
    CHECK(pad_hypergraph(empty, 3).vertex_count == 2);  // no edges: unchanged

    Hypergraph wide;
    wide.vertex_count = 4;
    wide.hyperedges = {{0, 1, 2}};
    CHECK_THROWS_AS(pad_hypergraph(wide, 2), RankTooLarge);
}

TEST_CASE("padding can need an isolated vertex after edge padding") {
    Hypergraph h;
    h.vertex_count = 1;
    h.hyperedges = {{0}};
    auto padded = pad_hypergraph(h, 3);  // edge grows to {0, p1, p2}, then |V| -> 4
    CHECK(padded.hyperedges[0].size() == 3);
    CHECK(padded.vertex_count == 4);
    CHECK(tau(padded) == 1);
}

TEST_CASE("hitting-set construction rejects out-of-range parameters") {
    CHECK_THROWS_AS(reduce_hitting_set(triangle(), 1, 4, true), ParameterViolation);
    CHECK_THROWS_AS(reduce_hitting_set(triangle(), 2, 3, true), ParameterViolation);
    Hypergraph wide;
    wide.vertex_count = 4;
    wide.hyperedges = {{0, 1, 2}};
    CHECK_THROWS_AS(reduce_hitting_set(wide, 2, 4, true), ParameterViolation);  // rank 3 > d = 2
}

TEST_CASE("triangle layout: roles, deficiency localization, boundary counts") {
    for (bool directed : {true, false}) {
        auto layout = reduce_hitting_set(triangle(), 2, 4, directed);
        CHECK(layout.graph.vertex_count() == 8);  // 3 starts + 3 elements + 2 sinks, no pad
        CHECK(layout.s_of(0) == layout.t_of(0));  // k = 2 degenerates the path

        auto table = all_pairs_shortest_with_hops(layout.graph);
        auto x = deficient_vertices(layout.graph, table, layout.params);
        std::vector<VertexId> starts{layout.s_of(0), layout.s_of(1), layout.s_of(2)};
        std::sort(starts.begin(), starts.end());
        CHECK(x.deficient == starts);

        for (std::size_t e = 0; e < 3; ++e) {
            VertexId s = layout.s_of(e);
            // The rho-1 nearest vertices are in hop range and exactly one
            // boundary pick is missing.
            auto cert = ball_certificate(layout.graph, table, layout.params, s);
            CHECK(cert.inner_ok);
            CHECK(cert.boundary_within_k == 0);
            CHECK(cert.boundary_needed == 1);
            if (directed) {
                std::uint32_t within = 0;
                for (VertexId v = 0; v < layout.graph.vertex_count(); ++v)
                    if (v != s && table.finite(s, v) && table.hops(s, v) <= layout.params.k)
                        ++within;
                CHECK(within == layout.params.rho - 1);
                CHECK(rho_closest_union(layout.graph, table, layout.params, s).size() ==
                      layout.params.rho);
            }
        }
    }
}

TEST_CASE("empty hypergraph reduces to an instance with nothing to fix") {
    Hypergraph empty;
    empty.vertex_count = 3;
    for (bool directed : {true, false}) {
        auto layout = reduce_hitting_set(empty, 2, 4, directed);
        CHECK(deficient_vertices(layout.graph, layout.params).deficient.empty());
        CHECK(shortcut_optimum(layout) == 0);
    }
}

TEST_CASE("directed instances preserve the hitting optimum exactly") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto h = random_hypergraph(5, static_cast<std::uint32_t>(seed % 4 + 1), 2, seed);
        auto layout = reduce_hitting_set(h, 2, 4, true);
        REQUIRE(shortcut_optimum(layout) == tau(layout.padded));
    }
    auto k3 = reduce_hitting_set(triangle(), 3, 5, true);
    CHECK(shortcut_optimum(k3) == 2);
}

TEST_CASE("undirected instances can undercut the hitting optimum (known defect)") {
    // Two disjoint hyperedges: tau = 2, but one shortcut between elements of
    // the two hyperedges (two hops through the shared hub) repairs both path
    // starts. The directed orientation is immune: elements outside e are
    // unreachable from s_e.
    Hypergraph disjoint;
    disjoint.vertex_count = 4;
    disjoint.hyperedges = {{0, 1}, {2, 3}};
    REQUIRE(tau(disjoint) == 2);

    auto directed = reduce_hitting_set(disjoint, 2, 4, true);
    CHECK(shortcut_optimum(directed) == 2);

    auto undirected = reduce_hitting_set(disjoint, 2, 4, false);
    auto x = deficient_vertices(undirected.graph, undirected.params);
    CHECK(x.deficient == std::vector<VertexId>{0, 1});  // localization still holds
    CHECK(shortcut_optimum(undirected) == 1);

    // The triangle hypergraph happens to agree in both orientations.
    CHECK(shortcut_optimum(reduce_hitting_set(triangle(), 2, 4, false)) == 2);
}

TEST_CASE("greedy matches the optimum on the directed triangle instance") {
    auto layout = reduce_hitting_set(triangle(), 2, 4, true);
    auto greedy = solve_greedy(layout.graph, layout.params, full_candidate_pool(layout.graph));
    CHECK(greedy.shortcuts.size() == 2);
    CHECK(verify_shortcut_set(layout.graph, layout.params, greedy.shortcuts).ok);
}

TEST_CASE("lifting hitting sets to shortcut sets") {
    auto layout = reduce_hitting_set(triangle(), 2, 4, true);

    HittingSet u;
    u.vertices = {0, 1};
    auto s = lift_hitting_to_shortcuts(layout, u);
    CHECK(s.size() == 2);
    CHECK(verify_shortcut_set(layout.graph, layout.params, s).ok);

    HittingSet all;
    all.vertices = {0, 1, 2};
    auto sa = lift_hitting_to_shortcuts(layout, all);
    CHECK(sa.size() == 3);
    CHECK(verify_shortcut_set(layout.graph, layout.params, sa).ok);

    HittingSet missing;
    missing.vertices = {0};  // misses {1,2}
    CHECK_THROWS_AS(lift_hitting_to_shortcuts(layout, missing), NotAHittingSet);
}

TEST_CASE("projection: round trip, gadget sources, minimality") {
    auto layout = reduce_hitting_set(triangle(), 2, 4, true);
    HittingSet u;
    u.vertices = {0, 1};
    auto s = lift_hitting_to_shortcuts(layout, u);
    auto back = project_shortcuts_to_hitting(layout, s);
    CHECK(back.vertices == u.vertices);

    // k = 3: substitute per-gadget shortcuts from inside the paths.
    auto deep = reduce_hitting_set(triangle(), 3, 5, true);
    auto table = all_pairs_shortest_with_hops(deep.graph);
    ShortcutSet inner;
    for (std::size_t e = 0; e < 3; ++e)
        inner.shortcuts.push_back(make_shortcut(deep.graph, table, deep.t_of(e), deep.sink2));
    REQUIRE(verify_shortcut_set(deep.graph, deep.params, inner).ok);
    auto projected = project_shortcuts_to_hitting(deep, inner);
    CHECK(projected.vertices.size() <= inner.size());
    CHECK(hits_all(deep.padded, projected.vertices));

    // Optimal solutions project to minimum hitting sets.
    auto opt = solve_exact(deep.graph, deep.params, full_candidate_pool(deep.graph));
    auto from_opt = project_shortcuts_to_hitting(deep, opt.shortcuts);
    CHECK(from_opt.vertices.size() == tau(deep.padded));

    ShortcutSet nonsolving;
    CHECK_THROWS_AS(project_shortcuts_to_hitting(layout, nonsolving), InvalidSolution);
}

TEST_CASE("tiebreak construction: parity vertex, localization, boundary choice") {
    Hypergraph h;
    h.vertex_count = 2;
    h.hyperedges = {{0, 1}};

    auto even = reduce_tiebreaker(h, 2, 5, true);  // d = 2, even: no parity vertex
    CHECK_FALSE(even.parity.has_value());
    CHECK(even.padded.vertex_count == 3);  // isolated pad to reach d+1
    CHECK(even.graph.vertex_count() == 10);
    auto tev = all_pairs_shortest_with_hops(even.graph);
    auto xev = deficient_vertices(even.graph, tev, even.params);
    CHECK(xev.deficient == std::vector<VertexId>{even.s_of(0)});
    std::uint32_t within = 0;
    for (VertexId v = 0; v < even.graph.vertex_count(); ++v)
        if (v != even.s_of(0) && tev.finite(even.s_of(0), v) && tev.hops(even.s_of(0), v) <= 2)
            ++within;
    CHECK(within == even.params.rho - 1);
    // The boundary tier is exactly the two chain tails of the hyperedge.
    auto un = rho_closest_union(even.graph, tev, even.params, even.s_of(0));
    CHECK(un.size() == even.params.rho + 1);
    for (std::uint32_t elem : {0u, 1u})
        CHECK(std::find(un.begin(), un.end(), even.element_chain[elem][2]) != un.end());

    auto odd = reduce_tiebreaker(h, 2, 6, true);  // rho-k+1 = 5 odd: parity vertex present
    REQUIRE(odd.parity.has_value());
    CHECK(odd.graph.vertex_count() == 11);
    auto tod = all_pairs_shortest_with_hops(odd.graph);
    auto xod = deficient_vertices(odd.graph, tod, odd.params);
    CHECK(xod.deficient == std::vector<VertexId>{odd.s_of(0)});
    std::uint32_t within_odd = 0;
    for (VertexId v = 0; v < odd.graph.vertex_count(); ++v)
        if (v != odd.s_of(0) && tod.finite(odd.s_of(0), v) && tod.hops(odd.s_of(0), v) <= 2)
            ++within_odd;
    CHECK(within_odd == odd.params.rho - 1);

    Hypergraph empty;
    empty.vertex_count = 2;
    auto trivial = reduce_tiebreaker(empty, 2, 5, true);
    CHECK(deficient_vertices(trivial.graph, trivial.params).deficient.empty());

    CHECK_THROWS_AS(reduce_tiebreaker(h, 2, 4, true), ParameterViolation);
}

TEST_CASE("extraction from chosen neighbor sets") {
    Hypergraph h;
    h.vertex_count = 2;
    h.hyperedges = {{0, 1}};
    auto layout = reduce_tiebreaker(h, 2, 5, true);

    // Choose element 0's chain tail by hand: the inner vertices plus a3.
    std::vector<VertexId> pick;
    auto table = all_pairs_shortest_with_hops(layout.graph);
    const DistRow& row = table.row(layout.s_of(0));
    for (VertexId v = 0; v < layout.graph.vertex_count(); ++v)
        if (v != layout.s_of(0) && row[v].finite() && row[v].dist < 5) pick.push_back(v);
    pick.push_back(layout.element_chain[0][2]);
    auto u = extract_hitting_from_tiebreak(layout, {pick});
    CHECK(u.vertices == std::vector<std::uint32_t>{0});
    CHECK(hits_all(layout.padded, u.vertices));

    std::vector<VertexId> wrong = pick;
    wrong.pop_back();
    CHECK_THROWS_AS(extract_hitting_from_tiebreak(layout, {wrong}), IllegalAssignment);

    std::vector<VertexId> skip = pick;
    skip.erase(std::find(skip.begin(), skip.end(), layout.element_chain[0][0]));
    skip.push_back(layout.element_chain[1][2]);
    CHECK_THROWS_AS(extract_hitting_from_tiebreak(layout, {skip}), IllegalAssignment);

    Hypergraph empty;
    empty.vertex_count = 2;
    auto trivial = reduce_tiebreaker(empty, 2, 5, true);
    CHECK(extract_hitting_from_tiebreak(trivial, {}).vertices.empty());
}

TEST_CASE("optimal solutions on directed tiebreak instances encode minimum hitting sets") {
    for (std::uint64_t seed = 40; seed < 52; ++seed) {
        auto h = random_hypergraph(4, static_cast<std::uint32_t>(seed % 3 + 1), 2, seed);
        auto layout = reduce_tiebreaker(h, 2, 5, true);
        auto opt = solve_exact(layout.graph, layout.params, full_candidate_pool(layout.graph));
        REQUIRE(opt.shortcuts.size() == tau(layout.padded));
        auto u = extract_hitting_from_tiebreak(layout, induced_assignments(layout, opt.shortcuts));
        REQUIRE(hits_all(layout.padded, u.vertices));
        REQUIRE(u.vertices.size() == tau(layout.padded));
    }
}

TEST_CASE("hitting-set oracle") {
    CHECK(solve_hitting_exact(triangle())->vertices.size() == 2);

    Hypergraph single;
    single.vertex_count = 2;
    single.hyperedges = {{0}};
    CHECK(solve_hitting_exact(single)->vertices == std::vector<std::uint32_t>{0});

    Hypergraph empty;
    empty.vertex_count = 3;
    CHECK(solve_hitting_exact(empty)->vertices.empty());

    CHECK_FALSE(solve_hitting_exact(triangle(), 1).has_value());
    CHECK(solve_hitting_exact(triangle(), 2).has_value());

    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        auto h = random_hypergraph(6, static_cast<std::uint32_t>(seed % 5 + 1), 3, seed);
        REQUIRE(solve_hitting_exact(h)->vertices.size() == tau(h));
    }
}

TEST_CASE("random hypergraphs: determinism, bounds, emptiness") {
    CHECK(random_hypergraph(5, 0, 2, 9).hyperedges.empty());
    auto a = random_hypergraph(5, 4, 2, 7);
    auto b = random_hypergraph(5, 4, 2, 7);
    CHECK(a.hyperedges == b.hyperedges);
    auto c = random_hypergraph(6, 5, 3, 1);
    CHECK(c.rank() <= 3);
    CHECK(c.hyperedges.size() == 5);
}
