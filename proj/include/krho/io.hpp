// io.hpp - line-oriented text formats and JSON report assembly
//
// Formats (exact, integers only):
//   graph:      krho-graph v1 | directed|undirected | "n m" | m lines "u v w"
//   hypergraph: krho-hyper v1 | "n m" | m lines "size v_1 ... v_size"
//   shortcuts:  krho-shortcuts v1 | lines "u v w" until end of file
#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "krho/ball.hpp"
#include "krho/graph.hpp"
#include "krho/hardness.hpp"
#include "krho/shortcut.hpp"
#include "krho/solver.hpp"

namespace krho {

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
    std::uint64_t value{};
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || p != end)
        throw FormatError(line, std::string(what) + " must be a nonnegative integer, got '" +
                                    tok + "'");
    return value;
}

/// Reads the next line; throws when the stream is exhausted.
inline std::string next_line(std::istream& in, std::size_t& line, const char* what) {
    std::string text;
    if (!std::getline(in, text)) throw FormatError(line + 1, std::string("missing ") + what);
    ++line;
    return text;
}

}  // namespace detail

inline WeightedGraph parse_graph(std::istream& in) {
    std::size_t line = 0;
    if (detail::tokens_of(detail::next_line(in, line, "header")) !=
        std::vector<std::string>{"krho-graph", "v1"})
        throw FormatError(line, "expected header 'krho-graph v1'");

    auto mode = detail::tokens_of(detail::next_line(in, line, "orientation"));
    if (mode.size() != 1 || (mode[0] != "directed" && mode[0] != "undirected"))
        throw FormatError(line, "expected 'directed' or 'undirected'");
    const bool directed = mode[0] == "directed";

    auto counts = detail::tokens_of(detail::next_line(in, line, "size line"));
    if (counts.size() != 2) throw FormatError(line, "expected 'n m'");
    const std::uint64_t n = detail::parse_uint(counts[0], line, "vertex count");
    const std::uint64_t m = detail::parse_uint(counts[1], line, "edge count");
    if (n > (1ULL << 31)) throw FormatError(line, "vertex count too large");

    WeightedGraph g(directed, static_cast<VertexId>(n));
    std::set<std::pair<VertexId, VertexId>> seen;
    for (std::uint64_t i = 0; i < m; ++i) {
        auto toks = detail::tokens_of(detail::next_line(in, line, "edge line"));
        if (toks.size() != 3) throw FormatError(line, "expected 'u v w'");
        const std::uint64_t u = detail::parse_uint(toks[0], line, "endpoint");
        const std::uint64_t v = detail::parse_uint(toks[1], line, "endpoint");
        const std::uint64_t w = detail::parse_uint(toks[2], line, "weight");
        if (u >= n || v >= n) throw FormatError(line, "endpoint out of range");
        if (u == v) throw FormatError(line, "self-loops are not allowed");
        if (w < 1) throw FormatError(line, "weights must be >= 1");
        VertexId a = static_cast<VertexId>(u), b = static_cast<VertexId>(v);
        auto key = directed ? std::make_pair(a, b)
                            : std::make_pair(std::min(a, b), std::max(a, b));
        if (!seen.insert(key).second) throw FormatError(line, "duplicate edge pair");
        g.add_edge(a, b, w);
    }
    std::string rest;
    if (std::getline(in, rest) && !detail::tokens_of(rest).empty())
        throw FormatError(line + 1, "unexpected trailing content");
    g.canonicalize();
    return g;
}

inline void write_graph(std::ostream& out, const WeightedGraph& g) {
    WeightedGraph copy = g;
    copy.canonicalize();
    out << "krho-graph v1\n" << (g.directed() ? "directed" : "undirected") << "\n"
        << g.vertex_count() << " " << copy.edge_count() << "\n";
    for (const auto& e : copy.edges()) out << e.u << " " << e.v << " " << e.w << "\n";
}

inline Hypergraph parse_hypergraph(std::istream& in) {
    std::size_t line = 0;
    if (detail::tokens_of(detail::next_line(in, line, "header")) !=
        std::vector<std::string>{"krho-hyper", "v1"})
        throw FormatError(line, "expected header 'krho-hyper v1'");

    auto counts = detail::tokens_of(detail::next_line(in, line, "size line"));
    if (counts.size() != 2) throw FormatError(line, "expected 'n m'");
    const std::uint64_t n = detail::parse_uint(counts[0], line, "vertex count");
    const std::uint64_t m = detail::parse_uint(counts[1], line, "hyperedge count");

    Hypergraph h;
    h.vertex_count = static_cast<std::uint32_t>(n);
    for (std::uint64_t i = 0; i < m; ++i) {
        auto toks = detail::tokens_of(detail::next_line(in, line, "hyperedge line"));
        if (toks.empty()) throw FormatError(line, "expected 'size v...'");
        const std::uint64_t size = detail::parse_uint(toks[0], line, "hyperedge size");
        if (size == 0) throw FormatError(line, "hyperedges must be nonempty");
        if (toks.size() != size + 1) throw FormatError(line, "hyperedge size mismatch");
        std::vector<std::uint32_t> edge;
        for (std::uint64_t j = 1; j <= size; ++j) {
            std::uint64_t v = detail::parse_uint(toks[j], line, "hyperedge vertex");
            if (v >= n) throw FormatError(line, "hyperedge vertex out of range");
            edge.push_back(static_cast<std::uint32_t>(v));
        }
        std::sort(edge.begin(), edge.end());
        if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
            throw FormatError(line, "duplicate vertex in hyperedge");
        h.hyperedges.push_back(std::move(edge));
    }
    std::string rest;
    if (std::getline(in, rest) && !detail::tokens_of(rest).empty())
        throw FormatError(line + 1, "unexpected trailing content");
    h.check();
    return h;
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << "krho-hyper v1\n" << h.vertex_count << " " << h.hyperedges.size() << "\n";
    for (const auto& e : h.hyperedges) {
        out << e.size();
        for (std::uint32_t v : e) out << " " << v;
        out << "\n";
    }
}

inline ShortcutSet parse_shortcuts(std::istream& in) {
    std::size_t line = 0;
    if (detail::tokens_of(detail::next_line(in, line, "header")) !=
        std::vector<std::string>{"krho-shortcuts", "v1"})
        throw FormatError(line, "expected header 'krho-shortcuts v1'");
    ShortcutSet s;
    std::string text;
    while (std::getline(in, text)) {
        ++line;
        auto toks = detail::tokens_of(text);
        if (toks.empty()) continue;
        if (toks.size() != 3) throw FormatError(line, "expected 'u v w'");
        const std::uint64_t u = detail::parse_uint(toks[0], line, "endpoint");
        const std::uint64_t v = detail::parse_uint(toks[1], line, "endpoint");
        const std::uint64_t w = detail::parse_uint(toks[2], line, "weight");
        if (w < 1) throw FormatError(line, "weights must be >= 1");
        if (u == v) throw FormatError(line, "degenerate shortcut");
        s.shortcuts.push_back(
            {static_cast<VertexId>(u), static_cast<VertexId>(v), w});
    }
    return s;
}

inline void write_shortcuts(std::ostream& out, const ShortcutSet& s) {
    ShortcutSet copy = s;
    copy.sort_unique();
    out << "krho-shortcuts v1\n";
    for (const Shortcut& sc : copy.shortcuts) out << sc.u << " " << sc.v << " " << sc.weight << "\n";
}

// Path-based wrappers.

template <typename ParseFn>
auto load_with(const std::string& path, ParseFn&& fn) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return fn(in);
    } catch (const FormatError& e) {
        throw FormatError(e.line, path + ": " + e.what());
    }
}

inline WeightedGraph load_graph(const std::string& path) {
    return load_with(path, [](std::istream& in) { return parse_graph(in); });
}
inline Hypergraph load_hypergraph(const std::string& path) {
    return load_with(path, [](std::istream& in) { return parse_hypergraph(in); });
}
inline ShortcutSet load_shortcuts(const std::string& path) {
    return load_with(path, [](std::istream& in) { return parse_shortcuts(in); });
}

template <typename T, typename WriteFn>
void save_with(const std::string& path, const T& value, WriteFn&& fn) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    fn(out, value);
}

inline void save_graph(const std::string& path, const WeightedGraph& g) {
    save_with(path, g, [](std::ostream& o, const WeightedGraph& v) { write_graph(o, v); });
}
inline void save_hypergraph(const std::string& path, const Hypergraph& h) {
    save_with(path, h, [](std::ostream& o, const Hypergraph& v) { write_hypergraph(o, v); });
}
inline void save_shortcuts(const std::string& path, const ShortcutSet& s) {
    save_with(path, s, [](std::ostream& o, const ShortcutSet& v) { write_shortcuts(o, v); });
}

// JSON assembly. nlohmann::json objects keep keys sorted, which makes the
// reports diffable; timing is the one volatile field.

inline nlohmann::json to_json(const BallCertificate& c) {
    return {{"vertex", c.vertex},
            {"reachable", c.reachable_count},
            {"radius", c.radius},
            {"inner_ok", c.inner_ok},
            {"boundary_within_k", c.boundary_within_k},
            {"boundary_needed", c.boundary_needed},
            {"has_ball", c.has_ball}};
}

inline nlohmann::json to_json(const ShortcutSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Shortcut& sc : s.shortcuts) arr.push_back({sc.u, sc.v, sc.weight});
    return arr;
}

inline nlohmann::json instance_summary(const WeightedGraph& g) {
    return {{"vertices", g.vertex_count()},
            {"edges", g.edge_count()},
            {"directed", g.directed()}};
}

inline nlohmann::json report_json(const WeightedGraph& g, Params p, const DeficiencyReport& x,
                                  const ShortcutSet* solution, bool optimal, bool verified,
                                  double timing_ms) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : x.certificates) certs.push_back(to_json(c));
    nlohmann::json report{{"instance", instance_summary(g)},
                          {"params", {{"k", p.k}, {"rho", p.rho}}},
                          {"deficient", x.deficient},
                          {"certificates", certs},
                          {"timing_ms", timing_ms},
                          {"verified", verified}};
    if (solution)
        report["solution"] = {{"shortcuts", to_json(*solution)},
                              {"size", solution->shortcuts.size()},
                              {"optimal", optimal}};
    return report;
}

}  // namespace krho
