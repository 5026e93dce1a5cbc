// ball.hpp - per-vertex ball certificates and the deficient set
#pragma once

#include <algorithm>
#include <vector>

#include "krho/distance.hpp"
#include "krho/graph.hpp"

namespace krho {

/// Evidence that vertex `vertex` does or does not have a (k,rho)-ball,
/// expressed through the counting reformulation: radius is the smallest
/// distance d such that at least min(|R_u|, rho) other vertices lie within
/// distance d. A ball exists iff everything strictly inside the radius is
/// within k hops and enough of the boundary tier is as well.
struct BallCertificate {
    VertexId vertex = 0;
    std::uint32_t reachable_count = 0;   // |R_u|
    Weight radius = 0;                   // d_u; 0 when nothing is reachable
    bool inner_ok = true;                // all dist < radius within k hops
    std::uint32_t boundary_within_k = 0; // boundary vertices within k hops
    std::uint32_t boundary_needed = 0;   // boundary vertices the ball requires
    bool has_ball = true;
};

/// The set X of vertices lacking a ball, plus one certificate per vertex.
struct DeficiencyReport {
    std::vector<VertexId> deficient;           // sorted
    std::vector<BallCertificate> certificates; // indexed by vertex id
    bool is_krho_graph() const { return deficient.empty(); }
};

/// Certificate computed from one distance row (row[v] = (dist, hops) from u).
inline BallCertificate ball_certificate_from_row(const DistRow& row, Params p, VertexId u) {
    validate(p);
    BallCertificate cert;
    cert.vertex = u;

    std::vector<Weight> dists;
    dists.reserve(row.size());
    for (VertexId v = 0; v < row.size(); ++v)
        if (v != u && row[v].finite()) dists.push_back(row[v].dist);
    cert.reachable_count = static_cast<std::uint32_t>(dists.size());

    const std::uint32_t need = std::min<std::uint32_t>(cert.reachable_count, p.rho);
    if (need == 0) return cert;  // nothing reachable: trivially a ball

    std::nth_element(dists.begin(), dists.begin() + (need - 1), dists.end());
    cert.radius = dists[need - 1];

    std::uint32_t inner_count = 0;
    for (VertexId v = 0; v < row.size(); ++v) {
        if (v == u || !row[v].finite()) continue;
        if (row[v].dist < cert.radius) {
            ++inner_count;
            if (row[v].hops > p.k) cert.inner_ok = false;
        } else if (row[v].dist == cert.radius && row[v].hops <= p.k) {
            ++cert.boundary_within_k;
        }
    }
    cert.boundary_needed = need - inner_count;
    cert.has_ball = cert.inner_ok && cert.boundary_within_k >= cert.boundary_needed;
    return cert;
}

inline BallCertificate ball_certificate(const WeightedGraph& g, const DistanceTable& table,
                                        Params p, VertexId u) {
    if (u >= g.vertex_count()) throw Error("vertex id out of range");
    return ball_certificate_from_row(table.row(u), p, u);
}

inline DeficiencyReport deficient_vertices(const WeightedGraph& g, const DistanceTable& table,
                                           Params p) {
    DeficiencyReport report;
    report.certificates.reserve(g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        report.certificates.push_back(ball_certificate(g, table, p, u));
        if (!report.certificates.back().has_ball) report.deficient.push_back(u);
    }
    return report;
}

inline DeficiencyReport deficient_vertices(const WeightedGraph& g, Params p) {
    return deficient_vertices(g, all_pairs_shortest_with_hops(g), p);
}

/// All vertices eligible for some rho-closest neighbor set of u: everything
/// strictly closer than the rho-th smallest distance plus the whole tier
/// tied at that threshold. Returns R_u entirely when |R_u| <= rho.
inline std::vector<VertexId> rho_closest_union_r(const DistRow& row, std::uint32_t rho,
                                                 VertexId u) {
    std::vector<VertexId> reach;
    for (VertexId v = 0; v < row.size(); ++v)
        if (v != u && row[v].finite()) reach.push_back(v);
    if (reach.size() <= rho) return reach;

    std::vector<Weight> dists;
    dists.reserve(reach.size());
    for (VertexId v : reach) dists.push_back(row[v].dist);
    std::nth_element(dists.begin(), dists.begin() + (rho - 1), dists.end());
    const Weight threshold = dists[rho - 1];

    std::vector<VertexId> result;
    for (VertexId v : reach)
        if (row[v].dist <= threshold) result.push_back(v);
    return result;
}

inline std::vector<VertexId> rho_closest_union(const WeightedGraph& g, const DistanceTable& table,
                                               Params p, VertexId u) {
    validate(p);
    if (u >= g.vertex_count()) throw Error("vertex id out of range");
    return rho_closest_union_r(table.row(u), p.rho, u);
}

}  // namespace krho
