// Acceptance suite: one entry per numbered criterion, each printing a
// [PASS]/[FAIL] line per sub-check with the measured value and the pinned
// requirement.  Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "srgg/experiment.hpp"
#include "srgg/stats.hpp"
#include "support/oracles.hpp"

using srgg::ExperimentConfig;
using srgg::ExperimentKind;
using srgg::ModelParams;
using srgg::Rng;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Check> g_checks;

void record(const std::string& name, bool pass, const std::string& detail) {
    g_checks.push_back({name, pass, detail});
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

ExperimentConfig base_config(ExperimentKind kind, double n, long reps, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.params = ModelParams{1, n, 4.0, 3};
    cfg.replications = reps;
    cfg.master_seed = seed;
    cfg.builder = srgg::BuilderKind::tiered;
    cfg.cutoff = 2.0;
    cfg.workers = 1;
    return cfg;
}

void force_edge(srgg::SpatialGraph& g, std::uint32_t u, std::uint32_t v) {
    if (g.has_edge(u, v)) return;
    const double len = g.distance(u, v);
    const auto insert = [&](std::uint32_t a, std::uint32_t b) {
        auto& nb = g.neighbors[a];
        auto& ln = g.lengths[a];
        const auto it = std::lower_bound(nb.begin(), nb.end(), b);
        const auto pos = it - nb.begin();
        nb.insert(it, b);
        ln.insert(ln.begin() + pos, len);
    };
    insert(u, v);
    insert(v, u);
    g.edge_count += 1;
}

// ---- criterion 1: constant cross-check ------------------------------------

void criterion1() {
    const double quad = 2.0 * oracles::kernel_mass_quadrature(1, 4.0);
    const double closed = srgg::m3_closed_form(1, 4.0);
    const double rel = std::fabs(closed / quad - 1.0);
    record("C1.quadrature", rel <= 0.001,
           fmt("m3 closed form %.10g vs adaptive quadrature %.10g, rel diff %.3g (require <= 1e-3)",
               closed, quad, rel));

    Rng rng(8101, 0);
    const srgg::MkEstimate est = srgg::mk_monte_carlo(1, 4.0, 3, 1000000, rng);
    const double diff = std::fabs(est.value - closed);
    const double allowed = 3.0 * est.std_error + 1e-12 * closed;
    record("C1.monte_carlo", diff <= allowed,
           fmt("mk(k=3) %.10g vs closed %.10g, |diff| %.3g (require <= 3*stderr = %.3g)",
               est.value, closed, diff, allowed));
}

// ---- criterion 2: algebraic identities ------------------------------------

void criterion2() {
    Rng rng(8102, 0);
    double worst_cr = 0.0, worst_ew = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        const double alpha = d + rng.uniform(0.3, 6.0);
        const int k = 3 + static_cast<int>(rng.uniform(0.0, 4.0));
        const double n = rng.uniform(10.0, 5000.0);
        const double r0 = rng.uniform(0.1, 10.0);
        const double mk = k == 3 ? srgg::m3_closed_form(d, alpha) : rng.uniform(0.5, 30.0);
        const double theta = srgg::frechet_shape(d, alpha, k);

        const double rc = srgg::critical_radius(n, r0, d, alpha, k, mk);
        const double c = srgg::frechet_normalizer(n, d, alpha, k, mk);
        worst_cr = std::max(worst_cr, std::fabs(c * rc / r0 - 1.0));
        const double ew = srgg::expected_w(n, rc, d, alpha, k, mk);
        worst_ew = std::max(worst_ew, std::fabs(ew / std::pow(r0, -theta) - 1.0));
    }
    record("C2.normalizer_identity", worst_cr <= 1e-10,
           fmt("max |c(n)*critical_radius/r0 - 1| = %.3g over 100 draws (require <= 1e-10)",
               worst_cr));
    record("C2.expected_w_identity", worst_ew <= 1e-10,
           fmt("max |expected_w(critical_radius)/r0^-theta - 1| = %.3g (require <= 1e-10)",
               worst_ew));

    double worst_pref = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        const double alpha = d + rng.uniform(0.3, 6.0);
        const double m3 = srgg::m3_closed_form(d, alpha);
        const double direct = srgg::w_prefactor(d, alpha, 3, m3);
        const double alt = d * std::pow(kPi, d) * srgg::gamma_fn(1.0 - d / alpha) /
                           (std::pow(srgg::gamma_fn(1.0 + d / 2.0), 2) * (2.0 * alpha - d));
        worst_pref = std::max(worst_pref, std::fabs(direct / alt - 1.0));
    }
    record("C2.prefactor_alternate_form", worst_pref <= 1e-10,
           fmt("max |w_prefactor/alt - 1| = %.3g over 100 draws (require <= 1e-10)", worst_pref));
}

// ---- criterion 3: clique oracle -------------------------------------------

void criterion3() {
    Rng rng(8103, 0);
    long mismatches = 0, instances = 0, edge_mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const long v = 4 + static_cast<long>(rng.uniform(0.0, 27.0));  // up to 30
        const double p = rng.uniform(0.2, 0.9);
        const int k = 3 + static_cast<int>(rng.uniform(0.0, 3.0));
        ModelParams params{1, 25.0, 4.0, 3};
        const srgg::SpatialGraph g = oracles::random_bernoulli_graph(v, p, params, rng);
        const auto view = oracles::dense_view(g);
        const double r = rng.uniform(0.5, 12.0);
        const double eps = rng.uniform(0.1, 2.0);

        const auto brute = oracles::brute_force_stats(view.adj, view.dist, k, r, eps);
        const auto s = srgg::clique_statistics(g, k, r, eps);
        ++instances;
        bool ok = s.K == brute.K && s.W == brute.W && s.W_localized == brute.W_localized &&
                  s.W_localized_shared == brute.W_localized_shared &&
                  s.K_compact == brute.K_compact && s.has_clique == brute.e_star.has_value();
        if (ok && brute.e_star) ok = std::fabs(s.e_star - *brute.e_star) < 1e-12;

        auto got = srgg::collect_k_cliques(g, k);
        std::vector<std::vector<std::uint32_t>> got_sets;
        for (const auto& c : got) got_sets.push_back(c.vertices);
        std::sort(got_sets.begin(), got_sets.end());
        ok = ok && got_sets == brute.cliques;
        if (!ok) ++mismatches;

        for (std::uint32_t u = 0; u < static_cast<std::uint32_t>(v); ++u)
            for (std::uint32_t w : g.neighbors[u]) {
                if (w < u) continue;
                if (srgg::per_edge_clique_count(g, u, w, k) !=
                    oracles::brute_force_edge_cliques(view.adj, u, w, k))
                    ++edge_mismatches;
            }
    }
    record("C3.statistics_vs_bruteforce", mismatches == 0,
           fmt("%ld/%ld instances mismatched brute force (require 0)", mismatches, instances));
    record("C3.per_edge_counts", edge_mismatches == 0,
           fmt("%ld per-edge count mismatches (require 0)", edge_mismatches));
}

// ---- criterion 4: builder equivalence -------------------------------------

void criterion4() {
    const int seeds = 2000;
    ModelParams params{1, 50.0, 4.0, 3};
    std::vector<long> counts_a, counts_t;
    counts_a.reserve(seeds);
    counts_t.reserve(seeds);
    for (int i = 0; i < seeds; ++i) {
        Rng ra(8104, i);
        srgg::PointCloud ca = srgg::sample_fixed_cloud(50, params, ra);
        counts_a.push_back(
            static_cast<long>(srgg::build_graph_allpairs(std::move(ca), ra).edge_count));
        Rng rt(8114, i);
        srgg::PointCloud ct = srgg::sample_fixed_cloud(50, params, rt);
        counts_t.push_back(
            static_cast<long>(srgg::build_graph_tiered(std::move(ct), 2.0, rt).edge_count));
    }
    const long maxv = std::max(*std::max_element(counts_a.begin(), counts_a.end()),
                               *std::max_element(counts_t.begin(), counts_t.end()));
    std::vector<long> ha(maxv + 1, 0), ht(maxv + 1, 0);
    for (long c : counts_a) ha[c] += 1;
    for (long c : counts_t) ht[c] += 1;

    // merge adjacent values until each bin holds >= 10 combined observations
    std::vector<std::pair<long, long>> bins;
    long acc_a = 0, acc_t = 0;
    for (long v = 0; v <= maxv; ++v) {
        acc_a += ha[v];
        acc_t += ht[v];
        if (acc_a + acc_t >= 10) {
            bins.emplace_back(acc_a, acc_t);
            acc_a = acc_t = 0;
        }
    }
    if (acc_a + acc_t > 0) {
        if (bins.empty())
            bins.emplace_back(acc_a, acc_t);
        else {
            bins.back().first += acc_a;
            bins.back().second += acc_t;
        }
    }
    double chi2 = 0.0;
    for (const auto& [a, t] : bins) {
        const double diff = static_cast<double>(a - t);
        chi2 += diff * diff / static_cast<double>(a + t);
    }
    const double dof = static_cast<double>(bins.size()) - 1.0;
    const double p_value = 1.0 - oracles::chi_square_cdf(chi2, dof);
    record("C4.builder_equivalence", p_value >= 0.01,
           fmt("two-sample chi-square %.2f on %zu bins, p = %.4f (require p >= 0.01)", chi2,
               bins.size(), p_value));
}

// ---- criterion 5: triangles per planted long edge --------------------------

void criterion5() {
    const int reps = 2000;
    const double r = 5.0;
    ModelParams params{1, 500.0, 4.0, 3};
    double total = 0.0;
    for (int i = 0; i < reps; ++i) {
        Rng rng(8105, i);
        srgg::PointCloud cloud = srgg::sample_poisson_cloud(params, rng);
        const long base = cloud.count();
        const double anchor = rng.uniform(0.0, params.n);
        double partner = anchor + r;
        if (partner >= params.n) partner -= params.n;
        cloud.points.conservativeResize(base + 2, 1);
        cloud.points(base, 0) = anchor;
        cloud.points(base + 1, 0) = partner;
        srgg::SpatialGraph g = srgg::build_graph_tiered(std::move(cloud), 2.0, rng);
        const auto u = static_cast<std::uint32_t>(base);
        const auto v = static_cast<std::uint32_t>(base + 1);
        force_edge(g, u, v);
        total += static_cast<double>(srgg::per_edge_clique_count(g, u, v, 3));
    }
    const double mean = total / reps;
    const double target = srgg::theory_triangles_per_edge(r, 1, 4.0);
    const double rel = std::fabs(mean / target - 1.0);
    record("C5.planted_edge_triangles", rel <= 0.15,
           fmt("mean triangles per planted r=5 edge %.6g vs theory %.6g, rel diff %.3f "
               "(require <= 0.15)",
               mean, target, rel));
}

// ---- criterion 6: mean scaling --------------------------------------------

void criterion6() {
    ExperimentConfig big = base_config(ExperimentKind::scaling, 2000.0, 500, 8106);
    big.ew_targets = {10.0};
    big.output_dir = "acceptance_out/c6_n2000";
    const auto out_big = srgg::run_experiment(big);
    const auto& point_big = out_big.report["results"]["grid"][0];
    const double mean_big = point_big["mean_w"].get<double>();
    const double rel = std::fabs(mean_big / 10.0 - 1.0);
    record("C6.mean_scaling", rel <= 0.15,
           fmt("mean W %.4g at expected_w = 10 (n=2000, R=500), rel diff %.3f (require <= 0.15)",
               mean_big, rel));

    ExperimentConfig small = base_config(ExperimentKind::scaling, 500.0, 500, 8116);
    small.ew_targets = {10.0};
    small.output_dir = "acceptance_out/c6_n500";
    const auto out_small = srgg::run_experiment(small);
    const double vm_big = point_big["var_over_mean_sq"].get<double>();
    const double vm_small =
        out_small.report["results"]["grid"][0]["var_over_mean_sq"].get<double>();
    record("C6.variance_ratio_decay", vm_big < vm_small,
           fmt("Var/Mean^2: %.4g at n=2000 vs %.4g at n=500 (require strictly smaller)", vm_big,
               vm_small));
}

// ---- criterion 7: poisson limit -------------------------------------------

void criterion7() {
    ExperimentConfig cfg = base_config(ExperimentKind::poisson, 2000.0, 2000, 8107);
    cfg.r0 = 1.0;
    cfg.r0_set = true;
    cfg.output_dir = "acceptance_out/c7";
    const auto out = srgg::run_experiment(cfg);
    const double tv = out.report["results"]["tv_distance"].get<double>();
    const double mean = out.report["results"]["empirical_mean"].get<double>();
    record("C7.tv_distance", tv <= 0.1,
           fmt("TV to Poisson(1) = %.4f at n=2000, R=2000 (require <= 0.1)", tv));
    record("C7.mean", std::fabs(mean - 1.0) <= 0.15,
           fmt("empirical mean W = %.4f (require within 15%% of 1)", mean));

    ExperimentConfig fast = base_config(ExperimentKind::poisson, 1000.0, 1000, 8117);
    fast.r0 = 1.0;
    fast.r0_set = true;
    fast.output_dir = "acceptance_out/c7_fast";
    const auto out_fast = srgg::run_experiment(fast);
    const double tv_fast = out_fast.report["results"]["tv_distance"].get<double>();
    record("C7.fast_mode_tv", tv_fast <= 0.15,
           fmt("TV to Poisson(1) = %.4f at n=1000, R=1000 (require <= 0.15)", tv_fast));
}

// ---- criterion 8: frechet limit -------------------------------------------

void criterion8() {
    ExperimentConfig cfg = base_config(ExperimentKind::frechet, 2000.0, 400, 8108);
    cfg.output_dir = "acceptance_out/c8";
    const auto out = srgg::run_experiment(cfg);
    const auto& res = out.report["results"];

    const double theta = res["theta"].get<double>();
    record("C8.theta", theta == 7.0, fmt("reported theta = %g (require exactly 7)", theta));

    // the normalizer must specialize to the published bracket at (1,4,3)
    const double c = res["normalizer"].get<double>();
    const double bracket = kPi * std::tgamma(0.75) / (7.0 * std::pow(std::tgamma(1.5), 2));
    const double reciprocal = std::pow(bracket, 1.0 / 7.0) * std::pow(2000.0, 1.0 / 7.0);
    const double pin = std::fabs(1.0 / c - reciprocal) / reciprocal;
    record("C8.normalizer_pin", pin <= 1e-10,
           fmt("1/c(2000) = %.10g vs published bracket %.10g, rel diff %.3g (require <= 1e-10)",
               1.0 / c, reciprocal, pin));

    const double ks = res["ks_distance"].get<double>();
    record("C8.ks_distance", ks <= 0.08,
           fmt("KS(normalized e*, Frechet(7)) = %.4f over R=400 used=%ld excluded=%ld "
               "(require <= 0.08)",
               ks, res["replications_used"].get<long>(),
               res["replications_excluded"].get<long>()));
}

// ---- criterion 9: localization --------------------------------------------

void criterion9() {
    ExperimentConfig cfg = base_config(ExperimentKind::localization, 2000.0, 500, 8109);
    cfg.ew_targets = {20.0};
    cfg.output_dir = "acceptance_out/c9";
    const auto out = srgg::run_experiment(cfg);
    const auto& point = out.report["results"]["grid"][0];

    bool loc_pass = false;
    std::string loc_detail = "sum W = 0, ratio undefined";
    if (!point["w_localized_ratio"].is_null()) {
        const double ratio = point["w_localized_ratio"].get<double>();
        loc_pass = ratio >= 0.9;
        loc_detail = fmt("sum W_localized / sum W = %.4f at r = %.4g (require >= 0.9); "
                         "shared-endpoint variant %.4f",
                         ratio, point["r"].get<double>(),
                         point["w_localized_shared_ratio"].get<double>());
    }
    record("C9.w_localized_ratio", loc_pass, loc_detail);

    const double kc = point["k_compact_ratio"].get<double>();
    record("C9.k_compact_ratio", kc >= 0.95,
           fmt("sum K_compact / sum K = %.5f (require >= 0.95)", kc));
}

// ---- criterion 10: CLT direction ------------------------------------------

void criterion10() {
    ExperimentConfig cfg = base_config(ExperimentKind::scaling, 2000.0, 1000, 8110);
    cfg.ew_targets = {50.0};
    cfg.output_dir = "acceptance_out/c10";
    const auto out = srgg::run_experiment(cfg);
    const auto& res = out.report["results"];
    const auto& clt = res["clt"];
    const double ew = res["grid"][0]["expected_w"].get<double>();

    const double skew = clt["skewness"].get<double>();
    record("C10.skewness", std::fabs(skew) <= 0.3,
           fmt("|skewness| = %.4f at expected_w = %.3g, R=1000 (require <= 0.3)", std::fabs(skew),
               ew));
    const double ks = clt["ks_vs_normal"].get<double>();
    std::string extra;
    if (res.contains("clt_sample_mean") && !res["clt_sample_mean"].is_null())
        extra = fmt("; sample-mean-standardized KS = %.4f for reference",
                    res["clt_sample_mean"]["ks_vs_normal"].get<double>());
    record("C10.ks_vs_normal", ks <= 0.08,
           fmt("KS(standardized W, N(0,1)) = %.4f with expected_w standardizer (require <= 0.08)%s",
               ks, extra.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
    unsetenv("SRGG_LAB_OUTPUT_DIR");
    int which = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            which = std::atoi(argv[i + 1]);
            ++i;
        }
    }

    const std::vector<std::pair<int, std::function<void()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};

    for (const auto& [num, func] : criteria) {
        if (which != 0 && which != num) continue;
        std::printf("-- criterion %d --\n", num);
        func();
    }

    int failed = 0;
    for (const auto& c : g_checks)
        if (!c.pass) ++failed;
    std::printf("== %zu checks, %d failed ==\n", g_checks.size(), failed);
    return failed;
}
