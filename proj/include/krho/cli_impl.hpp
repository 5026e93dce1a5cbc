// cli_impl.hpp - subcommand dispatch for the krho binary
//
// Exit codes: 0 success / affirmative answer, 1 computed negative answer
// (verification false, no solution within pool or budget), 2 usage, format
// or resource errors.
#pragma once

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krho/hardness.hpp"
#include "krho/io.hpp"
#include "krho/kk1.hpp"
#include "krho/selftest.hpp"
#include "krho/solver.hpp"

namespace krho::cli {

namespace detail {

struct Options {
    std::uint32_t k = 1;
    std::uint32_t rho = 1;
    std::string input;
    std::string shortcuts_path;
    std::string algo = "exact";
    std::string out;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> budget;
    std::uint64_t node_cap = 10'000'000;
    unsigned threads = 1;
    bool directed = false;
    bool undirected = false;
    // gen parameters
    std::uint32_t gen_n = 8;
    std::uint32_t gen_m = 4;
    std::uint32_t gen_d = 2;
    std::uint32_t edge_pct = 40;
    std::uint64_t max_weight = 3;
    bool quick = false;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline void emit(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot open " + out_path + " for writing");
        f << j.dump(2) << "\n";
    }
}

inline int cmd_verify(const Options& opt) {
    Timer timer;
    auto g = load_graph(opt.input);
    auto s = load_shortcuts(opt.shortcuts_path);
    if (opt.budget) s.budget = *opt.budget;
    Params p{opt.k, opt.rho};
    auto result = verify_shortcut_set(g, p, s);
    auto report = report_json(g, p, result.report, &s, false, result.ok, timer.ms());
    report["diagnostics"] = result.diagnostics;
    report.erase("solution");
    report["shortcuts"] = to_json(s);
    report["verdict"] = result.ok;
    emit(report, opt.out);
    return result.ok ? 0 : 1;
}

inline int cmd_deficient(const Options& opt) {
    Timer timer;
    auto g = load_graph(opt.input);
    Params p{opt.k, opt.rho};
    validate(p);
    auto table = all_pairs_shortest_with_hops(g, opt.threads);
    auto x = deficient_vertices(g, table, p);
    emit(report_json(g, p, x, nullptr, false, x.is_krho_graph(), timer.ms()), opt.out);
    return 0;
}

inline int cmd_solve(const Options& opt) {
    Timer timer;
    auto g = load_graph(opt.input);
    Params p{opt.k, opt.rho};
    validate(p);

    SolveResult result;
    if (opt.algo == "exact") {
        SearchLimits limits;
        limits.node_cap = opt.node_cap;
        if (opt.budget) limits.size_limit = *opt.budget;
        result = solve_exact(g, p, full_candidate_pool(g), limits);
    } else if (opt.algo == "greedy") {
        result = solve_greedy(g, p, full_candidate_pool(g));
    } else if (opt.algo == "k1") {
        if (p.k != 1) throw ParameterViolation("--algo k1 requires k = 1");
        result = solve_k1(g, p.rho);
    } else if (opt.algo == "kk1") {
        if (g.directed())
            throw ParameterViolation("--algo kk1 requires an undirected instance");
        if (p.rho != p.k + 1) throw ParameterViolation("--algo kk1 requires rho = k+1");
        result = solve_kk1(g, p);
    } else {
        throw ParameterViolation("unknown --algo '" + opt.algo + "'");
    }

    auto verdict = verify_shortcut_set(g, p, result.shortcuts);
    if (!verdict.ok) throw StructureViolation("solver output failed re-verification");
    if (!opt.out.empty()) save_shortcuts(opt.out, result.shortcuts);

    auto x = deficient_vertices(g, p);
    auto report = report_json(g, p, x, &result.shortcuts, result.optimal, verdict.ok, timer.ms());
    report["algo"] = opt.algo;
    report["explored"] = result.explored;
    emit(report, "");
    return 0;
}

inline int cmd_reduce(const Options& opt, bool tiebreak) {
    Timer timer;
    if (opt.directed == opt.undirected)
        throw ParameterViolation("choose exactly one of --directed / --undirected");
    auto h = load_hypergraph(opt.input);
    auto layout = tiebreak ? reduce_tiebreaker(h, opt.k, opt.rho, opt.directed)
                           : reduce_hitting_set(h, opt.k, opt.rho, opt.directed);
    if (opt.out.empty()) throw ParameterViolation("reduce requires --out for the graph file");
    save_graph(opt.out, layout.graph);

    nlohmann::json roles{{"kind", tiebreak ? "tiebreaker" : "thm1"},
                         {"directed", layout.directed},
                         {"k", layout.params.k},
                         {"rho", layout.params.rho},
                         {"d", layout.d},
                         {"padded_vertices", layout.padded.vertex_count},
                         {"paths", layout.gadget_path}};
    if (tiebreak) {
        nlohmann::json chains = nlohmann::json::array();
        for (const auto& c : layout.element_chain) chains.push_back({c[0], c[1], c[2]});
        roles["chains"] = chains;
        if (layout.parity) roles["parity_vertex"] = *layout.parity;
    } else {
        roles["elements"] = layout.element_vertex;
        roles["T1"] = layout.sink1;
        roles["T2"] = layout.sink2;
    }
    emit(roles, opt.out + ".roles.json");

    nlohmann::json summary{{"instance", instance_summary(layout.graph)},
                           {"graph_file", opt.out},
                           {"roles_file", opt.out + ".roles.json"},
                           {"timing_ms", timer.ms()}};
    emit(summary, "");
    return 0;
}

inline int cmd_gen_graph(const Options& opt) {
    if (opt.directed && opt.undirected)
        throw ParameterViolation("choose at most one of --directed / --undirected");
    Rng rng(opt.seed);
    auto g = random_graph(opt.gen_n, opt.directed, opt.edge_pct, opt.max_weight, rng);
    if (opt.out.empty()) {
        write_graph(std::cout, g);
    } else {
        save_graph(opt.out, g);
        emit(nlohmann::json{{"instance", instance_summary(g)}, {"graph_file", opt.out}}, "");
    }
    return 0;
}

inline int cmd_gen_hypergraph(const Options& opt) {
    auto h = random_hypergraph(opt.gen_n, opt.gen_m, opt.gen_d, opt.seed);
    if (opt.out.empty()) {
        write_hypergraph(std::cout, h);
    } else {
        save_hypergraph(opt.out, h);
        emit(nlohmann::json{{"vertices", h.vertex_count},
                            {"hyperedges", h.hyperedges.size()},
                            {"hypergraph_file", opt.out}},
             "");
    }
    return 0;
}

inline int cmd_oracle_hitting(const Options& opt) {
    Timer timer;
    auto h = load_hypergraph(opt.input);
    std::optional<std::size_t> alpha;
    if (opt.budget) alpha = *opt.budget;
    auto result = solve_hitting_exact(h, alpha, opt.node_cap);
    nlohmann::json j{{"vertices", h.vertex_count},
                     {"hyperedges", h.hyperedges.size()},
                     {"timing_ms", timer.ms()}};
    if (alpha) j["alpha"] = *alpha;
    if (result) {
        j["hitting_set"] = result->vertices;
        j["size"] = result->vertices.size();
    } else {
        j["hitting_set"] = nullptr;
    }
    emit(j, opt.out);
    return result ? 0 : 1;
}

inline int cmd_selftest(const Options& opt) {
    auto results = selftest::run_all(opt.seed, opt.quick);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " (" << r.detail << ")\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args) {
    CLI::App app{"(k,rho)-shortcut toolkit: verification, solvers and hard-instance generators"};
    app.require_subcommand(1);
    detail::Options opt;

    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("-k,--k", opt.k, "hop budget k");
        cmd->add_option("-r,--rho", opt.rho, "neighbor count rho");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out, "output path");
        cmd->add_option("--threads", opt.threads, "worker cap for per-source computations")
            ->check(CLI::Range(1u, 256u));
    };

    auto* verify = app.add_subcommand("verify", "check a shortcut set against an instance");
    add_params(verify);
    add_common(verify);
    verify->add_option("graph", opt.input, "graph file")->required();
    verify->add_option("--shortcuts", opt.shortcuts_path, "shortcut file")->required();
    verify->add_option("--budget", opt.budget, "cardinality bound alpha");

    auto* deficient = app.add_subcommand("deficient", "report the vertices lacking their ball");
    add_params(deficient);
    add_common(deficient);
    deficient->add_option("graph", opt.input, "graph file")->required();

    auto* solve = app.add_subcommand("solve", "compute a shortcut set");
    add_params(solve);
    add_common(solve);
    solve->add_option("graph", opt.input, "graph file")->required();
    solve->add_option("--algo", opt.algo, "exact|greedy|k1|kk1")
        ->check(CLI::IsMember({"exact", "greedy", "k1", "kk1"}));
    solve->add_option("--budget", opt.budget, "size cap for the exact search");
    solve->add_option("--node-cap", opt.node_cap, "search node cap");

    auto* reduce = app.add_subcommand("reduce", "generate a hard instance from a hypergraph");
    auto* thm1 = reduce->add_subcommand("thm1", "hitting-set construction");
    auto* tiebreaker = reduce->add_subcommand("tiebreaker", "tiebreaking construction");
    for (CLI::App* cmd : {thm1, tiebreaker}) {
        add_params(cmd);
        add_common(cmd);
        cmd->add_option("hypergraph", opt.input, "hypergraph file")->required();
        cmd->add_flag("--directed", opt.directed, "emit a directed instance");
        cmd->add_flag("--undirected", opt.undirected, "emit an undirected instance");
    }
    reduce->require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "random instances");
    auto* gen_graph = gen->add_subcommand("random-graph", "random weighted graph");
    add_common(gen_graph);
    gen_graph->add_option("--n", opt.gen_n, "vertex count");
    gen_graph->add_option("--edge-pct", opt.edge_pct, "edge probability in percent")
        ->check(CLI::Range(0u, 100u));
    gen_graph->add_option("--max-weight", opt.max_weight, "maximum edge weight");
    gen_graph->add_flag("--directed", opt.directed, "directed output");
    gen_graph->add_flag("--undirected", opt.undirected, "undirected output (default)");
    gen_graph->add_option("--seed", opt.seed, "random seed");
    auto* gen_hyper = gen->add_subcommand("random-hypergraph", "random bounded-rank hypergraph");
    add_common(gen_hyper);
    gen_hyper->add_option("--n", opt.gen_n, "vertex count");
    gen_hyper->add_option("--m", opt.gen_m, "hyperedge count");
    gen_hyper->add_option("--d", opt.gen_d, "rank bound");
    gen_hyper->add_option("--seed", opt.seed, "random seed");
    gen->require_subcommand(1);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force references");
    auto* hitting = oracle_cmd->add_subcommand("hitting", "minimum hitting set");
    add_common(hitting);
    hitting->add_option("hypergraph", opt.input, "hypergraph file")->required();
    hitting->add_option("--budget", opt.budget, "decide existence at this size");
    hitting->add_option("--node-cap", opt.node_cap, "search node cap");
    oracle_cmd->require_subcommand(1);

    auto* selftest_cmd = app.add_subcommand("selftest", "run the oracle-equivalence suites");
    selftest_cmd->add_option("--seed", opt.seed, "random seed");
    selftest_cmd->add_flag("--quick", opt.quick, "reduced iteration counts");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return detail::cmd_verify(opt);
        if (deficient->parsed()) return detail::cmd_deficient(opt);
        if (solve->parsed()) return detail::cmd_solve(opt);
        if (reduce->parsed()) return detail::cmd_reduce(opt, tiebreaker->parsed());
        if (gen->parsed())
            return gen_graph->parsed() ? detail::cmd_gen_graph(opt)
                                       : detail::cmd_gen_hypergraph(opt);
        if (oracle_cmd->parsed()) return detail::cmd_oracle_hitting(opt);
        if (selftest_cmd->parsed()) return detail::cmd_selftest(opt);
    } catch (const InfeasibleWithinPool& e) {
        std::cerr << "no solution: " << e.what() << "\n";
        return 1;
    } catch (const Stalled& e) {
        std::cerr << "no solution: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const SearchBudgetExceeded& e) {
        std::cerr << "gave up: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace krho::cli
