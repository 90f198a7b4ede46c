#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "srgg/point_process.hpp"

namespace srgg {

// Connection kernel 1 - exp(-dist^-alpha); equals 1 at dist = 0 (continuous
// limit), strictly decreasing, valued in (0, 1].
double connection_prob(double dist, double alpha);

// Soft random geometric graph over a sampled cloud.  Neighbor lists are
// strictly sorted; lengths[i][j] is the cached torus distance to
// neighbors[i][j].
struct SpatialGraph {
    PointCloud cloud;
    std::vector<std::vector<std::uint32_t>> neighbors;
    std::vector<std::vector<double>> lengths;
    std::size_t edge_count = 0;

    long vertex_count() const { return cloud.count(); }
    long degree(std::uint32_t v) const { return static_cast<long>(neighbors[v].size()); }

    bool has_edge(std::uint32_t u, std::uint32_t v) const;
    // cached length, or nullopt when the pair is not an edge
    std::optional<double> edge_length(std::uint32_t u, std::uint32_t v) const;
    // torus distance recomputed from coordinates (works for non-edges too)
    double distance(std::uint32_t u, std::uint32_t v) const;
};

// Exact reference builder: one independent Bernoulli(g) draw per unordered
// pair, O(N^2).
SpatialGraph build_graph_allpairs(PointCloud cloud, Rng& rng);

// Cell-partitioned builder, distributionally identical to the all-pairs one.
// Near cell pairs (minimal separation < cutoff) are evaluated per pair; far
// cell pairs are grouped into wrapped-offset classes with a shared
// upper-bound probability p_ub = g(class separation), candidates drawn by
// geometric skipping and thinned with probability g(actual)/p_ub.
// cutoff >= n/2 degenerates to a single cell (all pairs direct) with a
// warning on stderr.
SpatialGraph build_graph_tiered(PointCloud cloud, double cutoff, Rng& rng);

// Edge list dump: header "d n alpha seed", then one "i j length" line per
// edge (i < j).  The seed field is master/index of the cloud's stream.
void dump_edge_list(const SpatialGraph& graph, std::ostream& out);

}  // namespace srgg
