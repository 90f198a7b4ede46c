#include "srgg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "srgg/stats.hpp"

namespace srgg {

namespace {

using nlohmann::json;

constexpr std::uint64_t kMkStreamIndex = 0x4D6B53747265616DULL;  // reserved, beyond any rep index

std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::frechet: return "frechet";
        case ExperimentKind::poisson: return "poisson";
        case ExperimentKind::scaling: return "scaling";
        case ExperimentKind::localization: return "localization";
        case ExperimentKind::constants: return "constants";
    }
    return "?";
}

std::string builder_name(BuilderKind b) {
    return b == BuilderKind::allpairs ? "allpairs" : "tiered";
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument("trailing characters");
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("invalid number '" + item + "' in " + key, key);
        }
    }
    if (out.empty()) throw ConfigError("empty list for " + key, key);
    return out;
}

double parse_double(const std::string& text, const std::string& key) {
    const auto values = parse_double_list(text, key);
    if (values.size() != 1) throw ConfigError("expected a single number for " + key, key);
    return values.front();
}

long parse_long(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer '" + text + "' for " + key, key);
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid seed '" + text + "' for " + key, key);
    }
}

TheoryConstants theory_for(const ExperimentConfig& cfg) {
    Rng rng(cfg.master_seed, kMkStreamIndex);
    return compute_theory_constants(cfg.params, cfg.mk_samples, rng);
}

std::vector<double> grid_radii(const ExperimentConfig& cfg, const TheoryConstants& tc) {
    if (!cfg.r_grid.empty()) return cfg.r_grid;
    std::vector<double> targets = cfg.ew_targets;
    if (targets.empty()) targets = {1.0, 5.0, 10.0, 50.0};
    std::vector<double> radii;
    radii.reserve(targets.size());
    for (double t : targets)
        radii.push_back(std::pow(tc.prefactor * std::pow(cfg.params.n, cfg.params.d) / t,
                                 1.0 / tc.theta));
    return radii;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string replications_csv(const std::vector<ReplicationResult>& reps) {
    std::string out =
        "rep,stream_index,n_points,n_edges,r,epsilon,K,W,W_localized,W_localized_shared,"
        "W_bar,K_compact,e_star,has_clique\n";
    for (const auto& rr : reps) {
        for (const auto& s : rr.stats) {
            out += std::to_string(rr.index);
            out += ',';
            out += std::to_string(rr.stream.index);
            out += ',';
            out += std::to_string(rr.n_points);
            out += ',';
            out += std::to_string(rr.n_edges);
            out += ',';
            out += format_double(s.r);
            out += ',';
            out += format_double(s.epsilon);
            out += ',';
            out += std::to_string(s.K);
            out += ',';
            out += std::to_string(s.W);
            out += ',';
            out += std::to_string(s.W_localized);
            out += ',';
            out += std::to_string(s.W_localized_shared);
            out += ',';
            out += std::to_string(s.W_bar);
            out += ',';
            out += std::to_string(s.K_compact);
            out += ',';
            out += format_double(s.e_star);
            out += ',';
            out += (s.has_clique ? "1\n" : "0\n");
        }
    }
    return out;
}

json config_echo(const ExperimentConfig& cfg, const std::vector<double>& radii, double eps_value) {
    json j;
    j["experiment"] = kind_name(cfg.kind);
    j["d"] = cfg.params.d;
    j["n"] = cfg.params.n;
    j["alpha"] = cfg.params.alpha;
    j["k"] = cfg.params.k;
    j["replications"] = cfg.replications;
    j["seed"] = cfg.master_seed;
    j["builder"] = builder_name(cfg.builder);
    j["cutoff"] = cfg.cutoff;
    // worker count and output directory are runtime details that cannot
    // affect results; leaving them out keeps reports byte-identical
    // regardless of where or how a config ran
    j["epsilon"] = eps_value;
    j["epsilon_schedule"] = cfg.epsilon.log_inverse ? "1/log(n)" : "fixed";
    if (!radii.empty()) j["r_grid"] = radii;
    if (cfg.r0_set) j["r0"] = cfg.r0;
    if (cfg.params.k > 3) j["mk_samples"] = cfg.mk_samples;
    return j;
}

json theory_echo(const TheoryConstants& tc) {
    json j;
    j["C_d"] = tc.c_d;
    j["theta"] = tc.theta;
    j["M_k"] = tc.mk;
    j["M_k_std_error"] = tc.mk_std_error;
    if (tc.mk_samples > 0) j["M_k_samples"] = tc.mk_samples;
    j["w_prefactor"] = tc.prefactor;
    j["frechet_scale"] = tc.frechet_scale;
    return j;
}

void check_accounting(const ReplicationResult& rr) {
    for (const auto& s : rr.stats) {
        if (s.W != s.W_localized + s.W_bar)
            throw std::logic_error("replication accounting violated: W != W_localized + W_bar");
        if (s.has_clique) {
            const bool long_seen = s.e_star >= s.r;
            if (long_seen != (s.W >= 1))
                throw std::logic_error("replication accounting violated: e_star vs W");
        } else if (s.W != 0 || s.K != 0) {
            throw std::logic_error("replication accounting violated: counts without cliques");
        }
    }
}

struct RunStats {
    double total_seconds = 0.0;
};

}  // namespace

double EpsilonSchedule::eval(double n) const {
    if (!log_inverse) return fixed_value;
    return 1.0 / std::log(n);
}

void ExperimentConfig::validate() const {
    try {
        params.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (replications < 1) throw ConfigError("replications must be >= 1", "replications");
    if (workers < 1) throw ConfigError("workers must be >= 1", "workers");
    if (!(cutoff > 0.0)) throw ConfigError("cutoff must be > 0", "cutoff");
    for (double r : r_grid)
        if (!(r > 0.0)) throw ConfigError("r_grid values must be > 0", "r_grid");
    for (double t : ew_targets)
        if (!(t > 0.0)) throw ConfigError("ew_targets values must be > 0", "ew_targets");
    if (epsilon.log_inverse) {
        if (!(params.n > 1.0))
            throw ConfigError("epsilon schedule 1/log(n) needs n > 1", "epsilon");
    } else if (!(epsilon.fixed_value > 0.0)) {
        throw ConfigError("epsilon must be > 0", "epsilon");
    }
    if (kind == ExperimentKind::poisson) {
        if (!r0_set) throw ConfigError("poisson experiment requires r0", "r0");
        if (!(r0 > 0.0)) throw ConfigError("r0 must be > 0", "r0");
    }
    if (mk_samples < 1) throw ConfigError("mk_samples must be >= 1", "mk_samples");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    bool have_experiment = false, have_d = false, have_n = false, have_alpha = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");

        if (key == "experiment") {
            if (value == "frechet") cfg.kind = ExperimentKind::frechet;
            else if (value == "poisson") cfg.kind = ExperimentKind::poisson;
            else if (value == "scaling") cfg.kind = ExperimentKind::scaling;
            else if (value == "localization") cfg.kind = ExperimentKind::localization;
            else if (value == "constants") cfg.kind = ExperimentKind::constants;
            else throw ConfigError("unknown experiment kind '" + value + "'", key);
            have_experiment = true;
        } else if (key == "d") {
            cfg.params.d = static_cast<int>(parse_long(value, key));
            have_d = true;
        } else if (key == "n") {
            cfg.params.n = parse_double(value, key);
            have_n = true;
        } else if (key == "alpha") {
            cfg.params.alpha = parse_double(value, key);
            have_alpha = true;
        } else if (key == "k") {
            cfg.params.k = static_cast<int>(parse_long(value, key));
        } else if (key == "replications") {
            cfg.replications = parse_long(value, key);
        } else if (key == "seed") {
            cfg.master_seed = parse_u64(value, key);
        } else if (key == "r_grid") {
            cfg.r_grid = parse_double_list(value, key);
        } else if (key == "ew_targets") {
            cfg.ew_targets = parse_double_list(value, key);
        } else if (key == "r0") {
            cfg.r0 = parse_double(value, key);
            cfg.r0_set = true;
        } else if (key == "epsilon") {
            if (value == "auto") {
                cfg.epsilon.log_inverse = true;
            } else {
                cfg.epsilon.log_inverse = false;
                cfg.epsilon.fixed_value = parse_double(value, key);
            }
        } else if (key == "builder") {
            if (value == "allpairs") cfg.builder = BuilderKind::allpairs;
            else if (value == "tiered") cfg.builder = BuilderKind::tiered;
            else throw ConfigError("unknown builder '" + value + "'", key);
        } else if (key == "cutoff") {
            cfg.cutoff = parse_double(value, key);
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(parse_long(value, key));
        } else if (key == "mk_samples") {
            cfg.mk_samples = parse_long(value, key);
        } else {
            throw ConfigError("unknown config key '" + key + "'", key);
        }
    }
    if (!have_experiment) throw ConfigError("missing required key 'experiment'", "experiment");
    if (!have_d) throw ConfigError("missing required key 'd'", "d");
    if (!have_n) throw ConfigError("missing required key 'n'", "n");
    if (!have_alpha) throw ConfigError("missing required key 'alpha'", "alpha");
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::vector<ReplicationResult> run_replications(
    const ExperimentConfig& config, const std::vector<std::pair<double, double>>& grid) {
    const long R = config.replications;
    std::vector<ReplicationResult> results(R);

    auto one = [&](long i) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng rng(config.master_seed, static_cast<std::uint64_t>(i));
        PointCloud cloud = sample_poisson_cloud(config.params, rng);
        SpatialGraph graph = config.builder == BuilderKind::allpairs
                                 ? build_graph_allpairs(std::move(cloud), rng)
                                 : build_graph_tiered(std::move(cloud), config.cutoff, rng);
        ReplicationResult rr;
        rr.index = i;
        rr.stream = graph.cloud.seed_record;
        rr.n_points = graph.vertex_count();
        rr.n_edges = graph.edge_count;
        rr.stats = clique_statistics_multi(graph, config.params.k, grid);
        check_accounting(rr);
        rr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results[i] = std::move(rr);
    };

    if (config.workers <= 1 || R == 1) {
        for (long i = 0; i < R; ++i) one(i);
        return results;
    }

    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= R) return;
            try {
                one(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = static_cast<int>(std::min<long>(config.workers, R));
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

namespace {

json run_frechet(const ExperimentConfig& cfg, const TheoryConstants& tc,
                 const std::string& out_dir, int& exit_code) {
    const double eps = cfg.epsilon.eval(cfg.params.n);
    const double r_ref =
        critical_radius(cfg.params.n, 1.0, cfg.params.d, cfg.params.alpha, cfg.params.k, tc.mk);
    const auto reps = run_replications(cfg, {{r_ref, eps}});

    std::vector<double> normalized;
    long excluded = 0;
    for (const auto& rr : reps) {
        const auto& s = rr.stats.front();
        if (!s.has_clique) {
            ++excluded;
            continue;
        }
        normalized.push_back(tc.frechet_scale * s.e_star);
    }

    json results;
    results["replications_used"] = static_cast<long>(normalized.size());
    results["replications_excluded"] = excluded;
    results["exclusion_rate"] =
        static_cast<double>(excluded) / static_cast<double>(cfg.replications);
    results["theta"] = tc.theta;
    results["normalizer"] = tc.frechet_scale;

    if (normalized.empty()) {
        results["status"] = "failed";
        results["reason"] = "every replication was clique-free";
        exit_code = 3;
        write_text_file(out_dir + "/replications.csv", replications_csv(reps));
        return results;
    }

    const double theta = tc.theta;
    const double ks =
        ks_distance(normalized, [theta](double x) { return frechet_cdf(x, theta); });
    results["status"] = "ok";
    results["ks_distance"] = ks;

    EcdfTable ecdf = EcdfTable::from_samples(normalized);
    std::string csv = "value,empirical_cdf,frechet_cdf\n";
    for (long i = 0; i < ecdf.size(); ++i) {
        csv += format_double(ecdf.values[i]);
        csv += ',';
        csv += format_double(ecdf.prob(i));
        csv += ',';
        csv += format_double(frechet_cdf(ecdf.values[i], theta));
        csv += '\n';
    }
    write_text_file(out_dir + "/ecdf.csv", csv);
    results["ecdf_file"] = "ecdf.csv";
    write_text_file(out_dir + "/replications.csv", replications_csv(reps));
    return results;
}

json run_poisson(const ExperimentConfig& cfg, const TheoryConstants& tc,
                 const std::string& out_dir, int&) {
    const double eps = cfg.epsilon.eval(cfg.params.n);
    const double r_n =
        critical_radius(cfg.params.n, cfg.r0, cfg.params.d, cfg.params.alpha, cfg.params.k, tc.mk);
    const double beta = std::pow(cfg.r0, -tc.theta);
    const auto reps = run_replications(cfg, {{r_n, eps}});

    std::vector<long> counts;
    counts.reserve(reps.size());
    for (const auto& rr : reps) counts.push_back(rr.stats.front().W);
    const PoissonFitReport fit = poisson_fit(counts, beta);

    json results;
    results["status"] = "ok";
    results["r0"] = cfg.r0;
    results["critical_radius"] = r_n;
    results["beta"] = beta;
    results["tv_distance"] = fit.tv_distance;
    results["empirical_mean"] = fit.empirical_mean;
    results["empirical_variance"] = fit.empirical_variance;
    results["histogram"] = fit.histogram;
    write_text_file(out_dir + "/replications.csv", replications_csv(reps));
    return results;
}

json run_scaling(const ExperimentConfig& cfg, const TheoryConstants& tc,
                 const std::string& out_dir, int&) {
    const double eps = cfg.epsilon.eval(cfg.params.n);
    const std::vector<double> radii = grid_radii(cfg, tc);
    std::vector<std::pair<double, double>> grid;
    for (double r : radii) grid.emplace_back(r, eps);
    const auto reps = run_replications(cfg, grid);

    json points = json::array();
    std::size_t best = 0;
    double best_ew = -1.0;
    for (std::size_t t = 0; t < radii.size(); ++t) {
        const double ew = expected_w(cfg.params.n, radii[t], cfg.params.d, cfg.params.alpha,
                                     cfg.params.k, tc.mk);
        double mean = 0.0;
        for (const auto& rr : reps) mean += static_cast<double>(rr.stats[t].W);
        mean /= static_cast<double>(reps.size());
        double var = 0.0;
        for (const auto& rr : reps) {
            const double dev = static_cast<double>(rr.stats[t].W) - mean;
            var += dev * dev;
        }
        var = reps.size() > 1 ? var / static_cast<double>(reps.size() - 1) : 0.0;

        json p;
        p["r"] = radii[t];
        p["expected_w"] = ew;
        p["mean_w"] = mean;
        p["var_w"] = var;
        p["ratio_mean_over_expected"] = ew > 0.0 ? mean / ew : 0.0;
        p["var_over_mean_sq"] = mean > 0.0 ? var / (mean * mean) : 0.0;
        p["low_expectation_warning"] = ew < 1.0;
        points.push_back(p);
        if (ew > best_ew) {
            best_ew = ew;
            best = t;
        }
    }

    json results;
    results["status"] = "ok";
    results["grid"] = points;
    results["clt_grid_index"] = best;
    if (cfg.replications >= 100) {
        std::vector<double> values;
        values.reserve(reps.size());
        for (const auto& rr : reps) values.push_back(static_cast<double>(rr.stats[best].W));
        const CltReport theory_clt = clt_report(values, best_ew);
        json c;
        c["standardizer"] = "expected_w";
        c["skewness"] = theory_clt.skewness;
        c["excess_kurtosis"] = theory_clt.excess_kurtosis;
        c["ks_vs_normal"] = theory_clt.ks_vs_normal;
        c["degenerate"] = theory_clt.degenerate;
        results["clt"] = c;
        double sample_mean = 0.0;
        for (double v : values) sample_mean += v;
        sample_mean /= static_cast<double>(values.size());
        if (sample_mean > 0.0) {
            const CltReport sm = clt_report(values, sample_mean);
            json c2;
            c2["standardizer"] = "sample_mean";
            c2["skewness"] = sm.skewness;
            c2["excess_kurtosis"] = sm.excess_kurtosis;
            c2["ks_vs_normal"] = sm.ks_vs_normal;
            c2["degenerate"] = sm.degenerate;
            results["clt_sample_mean"] = c2;
        }
    } else {
        results["clt"] = nullptr;
    }
    write_text_file(out_dir + "/replications.csv", replications_csv(reps));
    return results;
}

json run_localization(const ExperimentConfig& cfg, const TheoryConstants& tc,
                      const std::string& out_dir, int&) {
    const double eps = cfg.epsilon.eval(cfg.params.n);
    const std::vector<double> radii = grid_radii(cfg, tc);
    std::vector<std::pair<double, double>> grid;
    for (double r : radii) grid.emplace_back(r, eps);
    const auto reps = run_replications(cfg, grid);

    json points = json::array();
    for (std::size_t t = 0; t < radii.size(); ++t) {
        long sum_w = 0, sum_loc = 0, sum_loc_shared = 0, sum_k = 0, sum_kc = 0;
        for (const auto& rr : reps) {
            sum_w += rr.stats[t].W;
            sum_loc += rr.stats[t].W_localized;
            sum_loc_shared += rr.stats[t].W_localized_shared;
            sum_k += rr.stats[t].K;
            sum_kc += rr.stats[t].K_compact;
        }
        json p;
        p["r"] = radii[t];
        p["epsilon"] = eps;
        p["sum_w"] = sum_w;
        p["sum_w_localized"] = sum_loc;
        p["sum_w_localized_shared"] = sum_loc_shared;
        p["sum_k"] = sum_k;
        p["sum_k_compact"] = sum_kc;
        if (sum_w > 0) {
            p["w_localized_ratio"] = static_cast<double>(sum_loc) / static_cast<double>(sum_w);
            p["w_localized_shared_ratio"] =
                static_cast<double>(sum_loc_shared) / static_cast<double>(sum_w);
        } else {
            p["w_localized_ratio"] = nullptr;
            p["w_localized_shared_ratio"] = nullptr;
        }
        if (sum_k > 0)
            p["k_compact_ratio"] = static_cast<double>(sum_kc) / static_cast<double>(sum_k);
        else
            p["k_compact_ratio"] = nullptr;
        points.push_back(p);
    }

    json results;
    results["status"] = "ok";
    results["grid"] = points;
    write_text_file(out_dir + "/replications.csv", replications_csv(reps));
    return results;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentOutcome outcome;

    std::string out_dir = config.output_dir;
    if (const char* env = std::getenv("SRGG_LAB_OUTPUT_DIR"); env && *env) out_dir = env;
    std::filesystem::create_directories(out_dir);
    outcome.output_dir = out_dir;

    const TheoryConstants tc = theory_for(config);
    const double eps_value = config.epsilon.eval(config.params.n);

    json report;
    report["theory"] = theory_echo(tc);

    json results;
    switch (config.kind) {
        case ExperimentKind::frechet:
            results = run_frechet(config, tc, out_dir, outcome.exit_code);
            report["config"] = config_echo(config, {}, eps_value);
            break;
        case ExperimentKind::poisson:
            results = run_poisson(config, tc, out_dir, outcome.exit_code);
            report["config"] = config_echo(config, {}, eps_value);
            break;
        case ExperimentKind::scaling: {
            const auto radii = grid_radii(config, tc);
            results = run_scaling(config, tc, out_dir, outcome.exit_code);
            report["config"] = config_echo(config, radii, eps_value);
            break;
        }
        case ExperimentKind::localization: {
            const auto radii = grid_radii(config, tc);
            results = run_localization(config, tc, out_dir, outcome.exit_code);
            report["config"] = config_echo(config, radii, eps_value);
            break;
        }
        case ExperimentKind::constants:
            results["status"] = "ok";
            report["config"] = config_echo(config, {}, eps_value);
            break;
    }
    report["results"] = results;
    outcome.report = report;
    write_text_file(out_dir + "/report.json", report.dump(2) + "\n");
    return outcome;
}

}  // namespace srgg
