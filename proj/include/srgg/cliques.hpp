#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "srgg/graph.hpp"

namespace srgg {

// A k-clique: strictly increasing vertex indices plus the largest pairwise
// torus distance.  Inside a clique every pair is an edge, so these distances
// coincide with edge lengths.
struct Clique {
    std::vector<std::uint32_t> vertices;
    double max_edge_length = 0.0;

    // number of clique edges with length >= r
    int long_edge_count(const SpatialGraph& graph, double r) const;
};

// Single-replication clique statistics at one (r, epsilon) threshold pair.
// Thresholds are closed: an edge of length exactly r counts as long.
struct CliqueStatistics {
    int k = 0;
    double r = 0.0;
    double epsilon = 0.0;
    long K = 0;                   // total k-cliques
    long W = 0;                   // cliques with >= 1 edge of length >= r
    long W_localized = 0;         // exactly k-1 long edges, rest <= 1/epsilon
    long W_localized_shared = 0;  // as above, long edges sharing one endpoint
    long W_bar = 0;               // W - W_localized
    long K_compact = 0;           // all pairwise distances <= 1/epsilon
    double e_star = 0.0;          // max distance within any clique (0 if none)
    bool has_clique = false;
};

// Visits every k-clique exactly once, vertices sorted ascending.  Vertices
// are ordered by degeneracy and partial cliques grow through sorted
// out-neighbor intersections, so the work is proportional to the cliques
// actually present.  k exceeding the vertex count just yields nothing.
void enumerate_k_cliques(const SpatialGraph& graph, int k,
                         const std::function<void(std::span<const std::uint32_t>)>& visit);

// Materialized enumeration for small graphs, dumps and tests.
std::vector<Clique> collect_k_cliques(const SpatialGraph& graph, int k);

// One enumeration pass evaluating every (r, epsilon) pair of the grid.
std::vector<CliqueStatistics> clique_statistics_multi(
    const SpatialGraph& graph, int k, const std::vector<std::pair<double, double>>& r_eps_grid);

CliqueStatistics clique_statistics(const SpatialGraph& graph, int k, double r, double epsilon);

// Number of k-cliques containing a given edge; the edge must be present.
long per_edge_clique_count(const SpatialGraph& graph, std::uint32_t u, std::uint32_t v, int k);

// Largest distance within any k-clique, or nullopt when no k-clique exists.
std::optional<double> max_clique_distance(const SpatialGraph& graph, int k);

}  // namespace srgg
