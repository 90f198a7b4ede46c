#include "srgg/cliques.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srgg {

namespace {

// degeneracy order via bucketed min-degree peeling; returns rank per vertex
std::vector<std::uint32_t> degeneracy_rank(const SpatialGraph& graph) {
    const long n = graph.vertex_count();
    std::vector<long> deg(n);
    long maxdeg = 0;
    for (long v = 0; v < n; ++v) {
        deg[v] = graph.degree(static_cast<std::uint32_t>(v));
        maxdeg = std::max(maxdeg, deg[v]);
    }
    std::vector<std::vector<std::uint32_t>> buckets(maxdeg + 1);
    for (long v = 0; v < n; ++v) buckets[deg[v]].push_back(static_cast<std::uint32_t>(v));
    std::vector<char> removed(n, 0);
    std::vector<std::uint32_t> rank(n, 0);
    long cursor = 0;
    std::uint32_t next_rank = 0;
    while (next_rank < n) {
        while (cursor <= maxdeg && buckets[cursor].empty()) ++cursor;
        if (cursor > maxdeg) break;
        const std::uint32_t v = buckets[cursor].back();
        buckets[cursor].pop_back();
        if (removed[v] || deg[v] != cursor) continue;  // stale bucket entry
        removed[v] = 1;
        rank[v] = next_rank++;
        for (std::uint32_t u : graph.neighbors[v]) {
            if (removed[u]) continue;
            if (--deg[u] >= 0) {
                buckets[deg[u]].push_back(u);
                if (deg[u] < cursor) cursor = deg[u];
            }
        }
    }
    return rank;
}

struct OrientedGraph {
    std::vector<std::vector<std::uint32_t>> out;  // sorted by index

    explicit OrientedGraph(const SpatialGraph& graph) {
        const auto rank = degeneracy_rank(graph);
        const long n = graph.vertex_count();
        out.resize(n);
        for (long v = 0; v < n; ++v)
            for (std::uint32_t u : graph.neighbors[v])
                if (rank[u] > rank[v]) out[v].push_back(u);
        // neighbor lists were sorted, so each out list stays sorted
    }
};

void intersect_sorted(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                      std::vector<std::uint32_t>& dst) {
    dst.clear();
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(dst));
}

struct Extender {
    const OrientedGraph& oriented;
    int k;
    const std::function<void(std::span<const std::uint32_t>)>& visit;
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> scratch;  // one candidate set per depth
    std::vector<std::uint32_t> emit_buf;

    void grow(int depth, const std::vector<std::uint32_t>& cand) {
        if (depth == k) {
            emit_buf.assign(stack.begin(), stack.end());
            std::sort(emit_buf.begin(), emit_buf.end());
            visit(emit_buf);
            return;
        }
        if (static_cast<long>(cand.size()) < k - depth) return;
        for (std::uint32_t v : cand) {
            stack.push_back(v);
            if (depth + 1 == k) {
                grow(depth + 1, cand);  // candidate set unused at full depth
            } else {
                intersect_sorted(cand, oriented.out[v], scratch[depth]);
                grow(depth + 1, scratch[depth]);
            }
            stack.pop_back();
        }
    }
};

// counts kk-cliques inside the subgraph induced on `verts` (sorted), using
// index-order orientation; small inputs only (per-edge counts)
long count_cliques_induced(const SpatialGraph& graph, const std::vector<std::uint32_t>& verts,
                           int kk) {
    if (kk == 0) return 1;
    const long m = static_cast<long>(verts.size());
    if (m < kk) return 0;
    std::vector<std::vector<std::uint32_t>> out(m);
    for (long a = 0; a < m; ++a) {
        intersect_sorted(graph.neighbors[verts[a]], verts, out[a]);
        // keep only higher-index members, mapped to local positions
        std::vector<std::uint32_t> local;
        for (std::uint32_t w : out[a]) {
            const auto it = std::lower_bound(verts.begin(), verts.end(), w);
            const long pos = it - verts.begin();
            if (pos > a) local.push_back(static_cast<std::uint32_t>(pos));
        }
        out[a] = std::move(local);
    }
    long total = 0;
    std::vector<std::vector<std::uint32_t>> levels(kk);
    std::function<void(int, const std::vector<std::uint32_t>&)> rec =
        [&](int depth, const std::vector<std::uint32_t>& cand) {
            if (depth == kk) {
                ++total;
                return;
            }
            if (static_cast<long>(cand.size()) < kk - depth) return;
            for (std::uint32_t v : cand) {
                if (depth + 1 == kk) {
                    ++total;
                } else {
                    intersect_sorted(cand, out[v], levels[depth]);
                    rec(depth + 1, levels[depth]);
                }
            }
        };
    std::vector<std::uint32_t> all(m);
    for (long a = 0; a < m; ++a) all[a] = static_cast<std::uint32_t>(a);
    for (std::uint32_t v : all) {
        if (kk == 1) {
            ++total;
        } else {
            intersect_sorted(all, out[v], levels[0]);
            rec(1, levels[0]);
        }
    }
    return total;
}

}  // namespace

int Clique::long_edge_count(const SpatialGraph& graph, double r) const {
    int count = 0;
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (graph.distance(vertices[a], vertices[b]) >= r) ++count;
    return count;
}

void enumerate_k_cliques(const SpatialGraph& graph, int k,
                         const std::function<void(std::span<const std::uint32_t>)>& visit) {
    if (k < 3) throw std::invalid_argument("enumerate_k_cliques: k must be >= 3");
    const long n = graph.vertex_count();
    if (n < k) return;
    OrientedGraph oriented(graph);
    Extender ext{oriented, k, visit, {}, {}, {}};
    ext.scratch.resize(k);
    ext.stack.reserve(k);
    for (long v = 0; v < n; ++v) {
        ext.stack.push_back(static_cast<std::uint32_t>(v));
        ext.grow(1, oriented.out[v]);
        ext.stack.pop_back();
    }
}

std::vector<Clique> collect_k_cliques(const SpatialGraph& graph, int k) {
    std::vector<Clique> out;
    enumerate_k_cliques(graph, k, [&](std::span<const std::uint32_t> vs) {
        Clique c;
        c.vertices.assign(vs.begin(), vs.end());
        double maxlen = 0.0;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                maxlen = std::max(maxlen, graph.distance(vs[a], vs[b]));
        c.max_edge_length = maxlen;
        out.push_back(std::move(c));
    });
    return out;
}

std::vector<CliqueStatistics> clique_statistics_multi(
    const SpatialGraph& graph, int k, const std::vector<std::pair<double, double>>& r_eps_grid) {
    for (const auto& [r, eps] : r_eps_grid) {
        if (!(r > 0.0)) throw std::invalid_argument("clique_statistics: r must be > 0");
        if (!(eps > 0.0)) throw std::invalid_argument("clique_statistics: epsilon must be > 0");
    }
    std::vector<CliqueStatistics> stats(r_eps_grid.size());
    for (std::size_t t = 0; t < r_eps_grid.size(); ++t) {
        stats[t].k = k;
        stats[t].r = r_eps_grid[t].first;
        stats[t].epsilon = r_eps_grid[t].second;
    }

    const int pairs = k * (k - 1) / 2;
    std::vector<double> len(pairs);
    std::vector<int> long_at(k);

    enumerate_k_cliques(graph, k, [&](std::span<const std::uint32_t> vs) {
        double maxlen = 0.0;
        int e = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b, ++e) {
                len[e] = graph.distance(vs[a], vs[b]);
                maxlen = std::max(maxlen, len[e]);
            }
        for (auto& s : stats) {
            s.K += 1;
            s.has_clique = true;
            s.e_star = std::max(s.e_star, maxlen);

            const double inv_eps = 1.0 / s.epsilon;
            int n_long = 0;
            double max_short = 0.0;
            std::fill(long_at.begin(), long_at.begin() + k, 0);
            e = 0;
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b, ++e) {
                    if (len[e] >= s.r) {
                        ++n_long;
                        ++long_at[a];
                        ++long_at[b];
                    } else {
                        max_short = std::max(max_short, len[e]);
                    }
                }
            if (n_long >= 1) s.W += 1;
            if (n_long == k - 1 && max_short <= inv_eps) {
                s.W_localized += 1;
                if (*std::max_element(long_at.begin(), long_at.begin() + k) == k - 1)
                    s.W_localized_shared += 1;
            }
            if (maxlen <= inv_eps) s.K_compact += 1;
        }
    });

    for (auto& s : stats) s.W_bar = s.W - s.W_localized;
    return stats;
}

CliqueStatistics clique_statistics(const SpatialGraph& graph, int k, double r, double epsilon) {
    return clique_statistics_multi(graph, k, {{r, epsilon}}).front();
}

long per_edge_clique_count(const SpatialGraph& graph, std::uint32_t u, std::uint32_t v, int k) {
    if (k < 3) throw std::invalid_argument("per_edge_clique_count: k must be >= 3");
    if (!graph.has_edge(u, v))
        throw std::invalid_argument("per_edge_clique_count: edge not present in graph");
    std::vector<std::uint32_t> common;
    intersect_sorted(graph.neighbors[u], graph.neighbors[v], common);
    if (k == 3) return static_cast<long>(common.size());
    return count_cliques_induced(graph, common, k - 2);
}

std::optional<double> max_clique_distance(const SpatialGraph& graph, int k) {
    bool found = false;
    double best = 0.0;
    enumerate_k_cliques(graph, k, [&](std::span<const std::uint32_t> vs) {
        found = true;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                best = std::max(best, graph.distance(vs[a], vs[b]));
    });
    if (!found) return std::nullopt;
    return best;
}

}  // namespace srgg
