#include <catch2/catch_amalgamated.hpp>

#include "krho/kk1.hpp"
#include "krho/oracle.hpp"
#include "krho/rng.hpp"

using namespace krho;

namespace {

WeightedGraph upath(VertexId n) {
    WeightedGraph g(false, n);
    for (VertexId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1);
    return g;
}

/// v0-v1-v2 with a fork v2-a, v2-b (unit weights, a=3, b=4).
WeightedGraph fork_graph() {
    WeightedGraph g(false, 5);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 3, 1);
    g.add_edge(2, 4, 1);
    return g;
}

/// Two roots (0 and 1) attached by weight-3 edges to a shared stem 2-3 that
/// forks into the tied tier {4, 5}.
WeightedGraph shared_tail_graph() {
    WeightedGraph g(false, 6);
    g.add_edge(0, 2, 3);
    g.add_edge(1, 2, 3);
    g.add_edge(2, 3, 1);
    g.add_edge(3, 4, 1);
    g.add_edge(3, 5, 1);
    return g;
}

}  // namespace

TEST_CASE("constrained trees on the path are the path itself") {
    auto g = upath(5);
    auto t = all_pairs_shortest_with_hops(g);
    Params p{2, 3};
    for (auto mode : {ConstrainedSPT::Mode::union_all, ConstrainedSPT::Mode::tiebroken}) {
        auto tree = constrained_spt(g, t, p, 0, mode);
        CHECK(tree.is_path());
        CHECK(tree.height() == 3);
        CHECK(tree.path_sequence() == std::vector<VertexId>{0, 1, 2, 3});
    }
}

TEST_CASE("constrained trees on the fork") {
    auto g = fork_graph();
    auto t = all_pairs_shortest_with_hops(g);
    Params p{2, 3};

    auto u = constrained_spt(g, t, p, 0, ConstrainedSPT::Mode::union_all);
    CHECK_FALSE(u.is_path());
    CHECK(u.height() == 3);
    CHECK(u.levels.at(3) == 3);
    CHECK(u.levels.at(4) == 3);

    auto tb = constrained_spt(g, t, p, 0, ConstrainedSPT::Mode::tiebroken);
    CHECK(tb.is_path());
    CHECK(tb.path_sequence() == std::vector<VertexId>{0, 1, 2, 3});  // identity order picks a

    VertexOrdering rev;
    rev.rank = {5, 4, 3, 2, 1, 0};
    rev.rank.resize(5);
    for (std::uint32_t i = 0; i < 5; ++i) rev.rank[i] = 4 - i;
    auto tb2 = constrained_spt(g, t, p, 0, ConstrainedSPT::Mode::tiebroken, rev);
    CHECK(tb2.path_sequence() == std::vector<VertexId>{0, 1, 2, 4});  // reversed order picks b
}

TEST_CASE("constrained trees reject vertices that are not deficient") {
    auto g = upath(5);
    auto t = all_pairs_shortest_with_hops(g);
    CHECK_THROWS_AS(constrained_spt(g, t, Params{2, 3}, 2, ConstrainedSPT::Mode::union_all),
                    NotDeficient);
    CHECK_THROWS_AS(tiebreak_candidates(g, t, Params{2, 3}, 1), NotDeficient);
}

TEST_CASE("pipeline preconditions") {
    auto g = upath(5);
    auto t = all_pairs_shortest_with_hops(g);
    CHECK_THROWS_AS(constrained_spt(g, t, Params{2, 4}, 0, ConstrainedSPT::Mode::union_all),
                    PreconditionViolated);
    WeightedGraph d(true, 3);
    d.add_edge(0, 1, 1);
    d.add_edge(1, 2, 1);
    auto td = all_pairs_shortest_with_hops(d);
    CHECK_THROWS_AS(constrained_spt(d, td, Params{2, 3}, 0, ConstrainedSPT::Mode::union_all),
                    PreconditionViolated);
    CHECK_THROWS_AS(solve_kk1(d, Params{2, 3}), PreconditionViolated);
}

TEST_CASE("tiebreak candidate sets") {
    auto g = fork_graph();
    auto t = all_pairs_shortest_with_hops(g);
    Params p{2, 3};
    CHECK(tiebreak_candidates(g, t, p, 0).candidates == std::vector<VertexId>{3, 4});

    auto path = upath(5);
    auto tp = all_pairs_shortest_with_hops(path);
    CHECK(tiebreak_candidates(path, tp, p, 0).candidates == std::vector<VertexId>{3});
}

TEST_CASE("roots whose short trees share the last two vertices have equal candidates") {
    auto g = shared_tail_graph();
    auto t = all_pairs_shortest_with_hops(g);
    Params p{2, 3};
    auto id = VertexOrdering::identity(6);

    auto tree0 = detail::build_spt(g, t, p.k, 0, ConstrainedSPT::Mode::union_all, id);
    auto tree1 = detail::build_spt(g, t, p.k, 1, ConstrainedSPT::Mode::union_all, id);
    REQUIRE(tree0.path_sequence() == std::vector<VertexId>{0, 2, 3});
    REQUIRE(tree1.path_sequence() == std::vector<VertexId>{1, 2, 3});

    auto b0 = tiebreak_candidates(g, t, p, 0);
    auto b1 = tiebreak_candidates(g, t, p, 1);
    CHECK(b0.candidates == b1.candidates);
    CHECK(b0.candidates == std::vector<VertexId>{4, 5});

    // All boundary candidates of one root sit at one distance.
    for (VertexId c : b0.candidates) CHECK(t.dist(0, c) == 5);
}

TEST_CASE("restricted subgraph of the path is the path") {
    auto g = upath(5);
    Params p{2, 3};
    auto rsg = restricted_subgraph(g, p, VertexOrdering::identity(5));
    CHECK(rsg.edges == std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    REQUIRE(rsg.demand_paths.size() == 2);
    CHECK(rsg.demand_paths.at(0) == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(rsg.demand_paths.at(4) == std::vector<VertexId>{4, 3, 2, 1});
}

TEST_CASE("restricted subgraph is empty without deficiencies") {
    WeightedGraph complete(false, 5);
    for (VertexId u = 0; u < 5; ++u)
        for (VertexId v = u + 1; v < 5; ++v) complete.add_edge(u, v, 1);
    auto rsg = restricted_subgraph(complete, Params{2, 3}, VertexOrdering::identity(5));
    CHECK(rsg.edges.empty());
    CHECK(rsg.demand_paths.empty());
}

TEST_CASE("cover instance of the path") {
    auto g = upath(5);
    Params p{2, 3};
    auto phi = VertexOrdering::identity(5);
    auto instance = build_cover_instance(g, p, phi, restricted_subgraph(g, p, phi));
    CHECK(instance.universe == std::vector<VertexId>{0, 4});
    REQUIRE(instance.sets.size() == 3);
    std::vector<Shortcut> candidates;
    for (const auto& e : instance.sets) candidates.push_back(e.candidate);
    CHECK(candidates == std::vector<Shortcut>{{0, 2, 2}, {1, 3, 2}, {2, 4, 2}});
    CHECK(instance.sets[1].covered == std::vector<VertexId>{0, 4});
}

TEST_CASE("every demand path contributes k windows") {
    auto g = upath(4);
    Params p{2, 3};  // only vertex 0 and 3 are deficient; paths of k+2 vertices
    auto phi = VertexOrdering::identity(4);
    auto rsg = restricted_subgraph(g, p, phi);
    for (const auto& [root, seq] : rsg.demand_paths) CHECK(seq.size() == p.k + 2);
    auto instance = build_cover_instance(g, p, phi, rsg);
    CHECK(instance.sets.size() == 2);  // {0,2} and {1,3}, shared by both paths
}

TEST_CASE("restricted solver: path, solved instance, shared-tail instance") {
    auto g = upath(5);
    Params p{2, 3};
    auto r = solve_kk1(g, p);
    CHECK(r.optimal);
    CHECK(r.shortcuts.shortcuts == std::vector<Shortcut>{{1, 3, 2}});

    WeightedGraph complete(false, 4);
    for (VertexId u = 0; u < 4; ++u)
        for (VertexId v = u + 1; v < 4; ++v) complete.add_edge(u, v, 1);
    CHECK(solve_kk1(complete, Params{2, 3}).shortcuts.size() == 0);

    auto shared = shared_tail_graph();
    auto rs = solve_kk1(shared, p);
    CHECK(rs.shortcuts.size() == 1);  // one window shortcut repairs both roots
}

TEST_CASE("restricted solver matches the unrestricted exact optimum") {
    Rng rng(515'151);
    int done = 0;
    while (done < 60) {
        VertexId n = static_cast<VertexId>(rng.range(3, 8));
        auto g = random_graph(n, false, 45, 3, rng);
        Hops k = static_cast<Hops>(rng.range(2, 3));
        Params p{k, k + 1};
        auto exact = solve_exact(g, p, full_candidate_pool(g));
        auto restricted = solve_kk1(g, p);
        REQUIRE(restricted.shortcuts.size() == exact.shortcuts.size());
        for (int reorder = 0; reorder < 5; ++reorder) {
            auto phi = VertexOrdering::shuffled(n, rng);
            REQUIRE(solve_kk1(g, p, phi).shortcuts.size() == exact.shortcuts.size());
        }
        ++done;
    }
}

TEST_CASE("structure suite over random undirected graphs") {
    Rng rng(626'262);
    for (int iter = 0; iter < 150; ++iter) {
        VertexId n = static_cast<VertexId>(rng.range(3, 10));
        auto g = random_graph(n, false, 40, 4, rng);
        Hops k = static_cast<Hops>(rng.range(2, 3));
        Params p{k, k + 1};
        auto phi = VertexOrdering::shuffled(n, rng);
        // Path, height and forest guarantees are asserted inside; a throw
        // here would mean a structural bug.
        CHECK_NOTHROW(restricted_subgraph(g, p, phi));
    }
}
