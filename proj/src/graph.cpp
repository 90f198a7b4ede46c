#include "srgg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace srgg {

double connection_prob(double dist, double alpha) {
    if (!(dist >= 0.0)) throw std::invalid_argument("connection_prob: dist must be >= 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("connection_prob: alpha must be > 0");
    if (dist == 0.0) return 1.0;
    return -std::expm1(-std::pow(dist, -alpha));
}

bool SpatialGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& nb = neighbors[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<double> SpatialGraph::edge_length(std::uint32_t u, std::uint32_t v) const {
    const auto& nb = neighbors[u];
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return lengths[u][static_cast<std::size_t>(it - nb.begin())];
}

double SpatialGraph::distance(std::uint32_t u, std::uint32_t v) const {
    return torus_distance_rows(cloud.row(u), cloud.row(v), cloud.params.d, cloud.params.n);
}

namespace {

struct EdgeSink {
    std::vector<std::uint32_t> us, vs;
    std::vector<double> lens;

    void add(std::uint32_t u, std::uint32_t v, double len) {
        if (u > v) std::swap(u, v);
        us.push_back(u);
        vs.push_back(v);
        lens.push_back(len);
    }
};

SpatialGraph assemble(PointCloud cloud, const EdgeSink& sink) {
    SpatialGraph g;
    const long n = cloud.count();
    g.cloud = std::move(cloud);
    g.neighbors.resize(n);
    g.lengths.resize(n);
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
    for (std::size_t e = 0; e < sink.us.size(); ++e) {
        adj[sink.us[e]].emplace_back(sink.vs[e], sink.lens[e]);
        adj[sink.vs[e]].emplace_back(sink.us[e], sink.lens[e]);
    }
    for (long v = 0; v < n; ++v) {
        std::sort(adj[v].begin(), adj[v].end());
        g.neighbors[v].reserve(adj[v].size());
        g.lengths[v].reserve(adj[v].size());
        for (const auto& [nbr, len] : adj[v]) {
            g.neighbors[v].push_back(nbr);
            g.lengths[v].push_back(len);
        }
    }
    g.edge_count = sink.us.size();
    return g;
}

// Cell partition of the torus with side >= cutoff per cell.  Cell count per
// dimension is capped so the grid never dwarfs the point set.
struct CellGrid {
    int d;
    double n;
    long m;          // cells per dimension
    double side;     // n / m
    long ncells;
    std::vector<std::vector<std::uint32_t>> members;

    CellGrid(const PointCloud& cloud, double cutoff) {
        d = cloud.params.d;
        n = cloud.params.n;
        long by_cutoff = static_cast<long>(std::floor(n / cutoff));
        long cap = static_cast<long>(std::floor(
            std::pow(8.0 * static_cast<double>(cloud.count()) + 64.0, 1.0 / d)));
        m = std::max(1L, std::min(by_cutoff, cap));
        side = n / static_cast<double>(m);
        ncells = 1;
        for (int j = 0; j < d; ++j) ncells *= m;
        members.resize(ncells);
        for (long i = 0; i < cloud.count(); ++i) {
            const double* row = cloud.row(i);
            long idx = 0;
            for (int j = 0; j < d; ++j) {
                long c = static_cast<long>(row[j] / side);
                if (c >= m) c = m - 1;
                idx = idx * m + c;
            }
            members[idx].push_back(static_cast<std::uint32_t>(i));
        }
    }

    // minimal torus distance between any two points of cells separated by
    // wrapped offset o
    double class_separation(const std::vector<long>& o) const {
        double sq = 0.0;
        for (int j = 0; j < d; ++j) {
            const long delta = std::min(o[j], m - o[j]);
            const double gap = delta > 1 ? static_cast<double>(delta - 1) * side : 0.0;
            sq += gap * gap;
        }
        return std::sqrt(sq);
    }
};

void evaluate_pair(const PointCloud& cloud, std::uint32_t i, std::uint32_t j, double alpha,
                   Rng& rng, EdgeSink& sink) {
    const double dist =
        torus_distance_rows(cloud.row(i), cloud.row(j), cloud.params.d, cloud.params.n);
    const double p = connection_prob(dist, alpha);
    const double u = rng.uniform();
    if (u < p) sink.add(i, j, dist);
}

}  // namespace

SpatialGraph build_graph_allpairs(PointCloud cloud, Rng& rng) {
    cloud.params.validate();
    const long n = cloud.count();
    const double alpha = cloud.params.alpha;
    EdgeSink sink;
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
            evaluate_pair(cloud, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                          alpha, rng, sink);
    return assemble(std::move(cloud), sink);
}

SpatialGraph build_graph_tiered(PointCloud cloud, double cutoff, Rng& rng) {
    cloud.params.validate();
    if (!(cutoff > 0.0)) throw std::invalid_argument("build_graph_tiered: cutoff must be > 0");
    if (cutoff >= cloud.params.n / 2.0)
        std::fprintf(stderr,
                     "srgg: warning: cutoff %g >= n/2, tiered builder degenerates to all-pairs\n",
                     cutoff);

    const int d = cloud.params.d;
    const double alpha = cloud.params.alpha;
    CellGrid grid(cloud, cutoff);
    const long m = grid.m;
    EdgeSink sink;

    // Cauchy-Schwarz bound on any class's pair-sequence length
    std::uint64_t pair_bound = 0;
    for (const auto& cell : grid.members)
        pair_bound += static_cast<std::uint64_t>(cell.size()) * cell.size();

    std::vector<long> offset(d, 0), complement(d, 0), acoord(d, 0);

    auto advance = [&](std::vector<long>& digits) {
        for (int j = d - 1; j >= 0; --j) {
            if (++digits[j] < m) return true;
            digits[j] = 0;
        }
        return false;
    };

    do {
        bool canonical = true, self_inverse = true, is_zero = true;
        for (int j = 0; j < d; ++j) {
            complement[j] = (m - offset[j]) % m;
            if (offset[j] != 0) is_zero = false;
            if (offset[j] != complement[j]) self_inverse = false;
        }
        for (int j = 0; j < d; ++j) {
            if (offset[j] < complement[j]) break;
            if (offset[j] > complement[j]) {
                canonical = false;
                break;
            }
        }
        if (!canonical) continue;

        if (is_zero) {
            // same-cell pairs
            for (const auto& cell : grid.members)
                for (std::size_t a = 0; a < cell.size(); ++a)
                    for (std::size_t b = a + 1; b < cell.size(); ++b)
                        evaluate_pair(cloud, cell[a], cell[b], alpha, rng, sink);
            continue;
        }

        int half_coord = -1;
        if (self_inverse) {
            for (int j = 0; j < d; ++j)
                if (offset[j] != 0) {
                    half_coord = j;
                    break;
                }
        }

        const double separation = grid.class_separation(offset);
        const bool near = separation < cutoff;
        const double p_ub = near ? 1.0 : connection_prob(separation, alpha);

        std::uint64_t next_pos = 0;
        if (!near) {
            next_pos = rng.geometric_skip(p_ub);
            if (next_pos >= pair_bound) continue;  // class certainly empty
        }

        std::fill(acoord.begin(), acoord.end(), 0);
        std::uint64_t cum = 0;
        long a_linear = 0;
        do {
            if (half_coord >= 0 && acoord[half_coord] >= m / 2) continue;
            long b_linear = 0;
            for (int j = 0; j < d; ++j) {
                long c = acoord[j] + offset[j];
                if (c >= m) c -= m;
                b_linear = b_linear * m + c;
            }
            const auto& ca = grid.members[a_linear];
            const auto& cb = grid.members[b_linear];
            if (ca.empty() || cb.empty()) continue;

            if (near) {
                for (std::uint32_t i : ca)
                    for (std::uint32_t j : cb) evaluate_pair(cloud, i, j, alpha, rng, sink);
                continue;
            }

            const std::uint64_t block =
                static_cast<std::uint64_t>(ca.size()) * static_cast<std::uint64_t>(cb.size());
            while (next_pos < cum + block) {
                const std::uint64_t rel = next_pos - cum;
                const std::uint32_t i = ca[rel / cb.size()];
                const std::uint32_t j = cb[rel % cb.size()];
                const double dist =
                    torus_distance_rows(cloud.row(i), cloud.row(j), d, cloud.params.n);
                const double g = connection_prob(dist, alpha);
                if (g > p_ub * (1.0 + 1e-9))
                    throw std::logic_error("build_graph_tiered: thinning bound violated");
                if (rng.uniform() < g / p_ub) sink.add(i, j, dist);
                const std::uint64_t skip = rng.geometric_skip(p_ub);
                if (skip >= pair_bound - next_pos) {
                    next_pos = pair_bound;  // off the end of every remaining block
                    break;
                }
                next_pos += 1 + skip;
            }
            if (next_pos >= pair_bound) break;
            cum += block;
        } while (++a_linear, advance(acoord));
    } while (advance(offset));

    return assemble(std::move(cloud), sink);
}

void dump_edge_list(const SpatialGraph& graph, std::ostream& out) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g %llu/%llu\n", graph.cloud.params.d,
                  graph.cloud.params.n, graph.cloud.params.alpha,
                  static_cast<unsigned long long>(graph.cloud.seed_record.master_seed),
                  static_cast<unsigned long long>(graph.cloud.seed_record.index));
    out << buf;
    const long n = graph.vertex_count();
    for (long i = 0; i < n; ++i) {
        const auto& nb = graph.neighbors[i];
        for (std::size_t t = 0; t < nb.size(); ++t) {
            if (nb[t] <= static_cast<std::uint32_t>(i)) continue;
            std::snprintf(buf, sizeof buf, "%ld %u %.17g\n", i, nb[t], graph.lengths[i][t]);
            out << buf;
        }
    }
}

}  // namespace srgg
