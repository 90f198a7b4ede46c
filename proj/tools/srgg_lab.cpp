#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "srgg/experiment.hpp"
#include "srgg/graph.hpp"
#include "srgg/point_process.hpp"
#include "srgg/stats.hpp"
#include "srgg/theory.hpp"

namespace {

using nlohmann::json;

void print_error(const std::string& msg, const std::string& key = "") {
    json err;
    err["error"] = msg;
    if (!key.empty()) err["key"] = key;
    std::cerr << err.dump() << "\n";
}

int cmd_simulate(const std::string& config_path) {
    const srgg::ExperimentConfig cfg = srgg::parse_config_file(config_path);
    const auto t0 = std::chrono::steady_clock::now();
    const srgg::ExperimentOutcome outcome = srgg::run_experiment(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "srgg_lab: wrote " << outcome.output_dir << "/report.json ("
              << secs << " s)\n";
    if (outcome.exit_code != 0)
        print_error(outcome.report["results"].value("reason", std::string("experiment failed")));
    return outcome.exit_code;
}

int cmd_constants(int d, double alpha, int k, double n, long mk_samples, std::uint64_t seed) {
    srgg::ModelParams params{d, n, alpha, k};
    params.validate();
    srgg::Rng rng(seed, 0);
    const srgg::TheoryConstants tc = srgg::compute_theory_constants(params, mk_samples, rng);

    std::printf("%-16s %d\n", "d", tc.d);
    std::printf("%-16s %.10g\n", "alpha", tc.alpha);
    std::printf("%-16s %d\n", "k", tc.k);
    std::printf("%-16s %.10g\n", "n", tc.n);
    std::printf("%-16s %.10g\n", "C_d", tc.c_d);
    std::printf("%-16s %.10g\n", "theta", tc.theta);
    if (tc.mk_samples > 0)
        std::printf("%-16s %.10g  (+- %.3g, %ld samples)\n", "M_k", tc.mk, tc.mk_std_error,
                    tc.mk_samples);
    else
        std::printf("%-16s %.10g  (closed form)\n", "M_k", tc.mk);
    std::printf("%-16s %.10g\n", "w_prefactor", tc.prefactor);
    std::printf("%-16s %.10g\n", "c(n)", tc.frechet_scale);

    json j;
    j["d"] = tc.d;
    j["alpha"] = tc.alpha;
    j["k"] = tc.k;
    j["n"] = tc.n;
    j["C_d"] = tc.c_d;
    j["theta"] = tc.theta;
    j["M_k"] = tc.mk;
    j["M_k_std_error"] = tc.mk_std_error;
    if (tc.mk_samples > 0) j["M_k_samples"] = tc.mk_samples;
    j["w_prefactor"] = tc.prefactor;
    j["frechet_scale"] = tc.frechet_scale;
    std::printf("%s\n", j.dump(2).c_str());
    return 0;
}

srgg::SpatialGraph build_single(int d, double n, double alpha, int k, std::uint64_t seed,
                                std::uint64_t index, const std::string& builder, double cutoff) {
    srgg::ModelParams params{d, n, alpha, k};
    params.validate();
    srgg::Rng rng(seed, index);
    srgg::PointCloud cloud = srgg::sample_poisson_cloud(params, rng);
    if (builder == "allpairs") return srgg::build_graph_allpairs(std::move(cloud), rng);
    return srgg::build_graph_tiered(std::move(cloud), cutoff, rng);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soft random geometric graph clique laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    auto* simulate = app.add_subcommand("simulate", "run an experiment from a config file");
    simulate->add_option("config", config_path, "flat key = value config file")->required();

    int d = 1, k = 3;
    double alpha = 4.0, n = 100.0, cutoff = 2.0, r_threshold = 1.0;
    long mk_samples = 1000000;
    std::uint64_t seed = 0, rep_index = 0;
    std::string builder = "tiered", out_path;

    auto* constants = app.add_subcommand("constants", "print the theory constants table");
    constants->add_option("--d", d)->required();
    constants->add_option("--alpha", alpha)->required();
    constants->add_option("--k", k)->required();
    constants->add_option("--n", n)->required();
    constants->add_option("--mk-samples", mk_samples, "Monte Carlo samples for M_k when k > 3");
    constants->add_option("--seed", seed);

    auto* dump_graph = app.add_subcommand("dump-graph", "sample one graph and dump its edge list");
    dump_graph->add_option("--d", d)->required();
    dump_graph->add_option("--n", n)->required();
    dump_graph->add_option("--alpha", alpha)->required();
    dump_graph->add_option("--seed", seed);
    dump_graph->add_option("--index", rep_index, "replication stream index");
    dump_graph->add_option("--builder", builder)->check(CLI::IsMember({"allpairs", "tiered"}));
    dump_graph->add_option("--cutoff", cutoff);
    dump_graph->add_option("--out", out_path, "output file (default stdout)");

    auto* dump_cliques =
        app.add_subcommand("dump-cliques", "sample one graph and dump its k-cliques as CSV");
    dump_cliques->add_option("--d", d)->required();
    dump_cliques->add_option("--n", n)->required();
    dump_cliques->add_option("--alpha", alpha)->required();
    dump_cliques->add_option("--k", k)->required();
    dump_cliques->add_option("--r", r_threshold, "long-edge threshold for the dump");
    dump_cliques->add_option("--seed", seed);
    dump_cliques->add_option("--index", rep_index);
    dump_cliques->add_option("--builder", builder)->check(CLI::IsMember({"allpairs", "tiered"}));
    dump_cliques->add_option("--cutoff", cutoff);
    dump_cliques->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(config_path);
        if (constants->parsed()) return cmd_constants(d, alpha, k, n, mk_samples, seed);

        if (dump_graph->parsed()) {
            const auto graph = build_single(d, n, alpha, 3, seed, rep_index, builder, cutoff);
            if (out_path.empty()) {
                srgg::dump_edge_list(graph, std::cout);
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + out_path);
                srgg::dump_edge_list(graph, out);
            }
            return 0;
        }

        if (dump_cliques->parsed()) {
            const auto graph = build_single(d, n, alpha, k, seed, rep_index, builder, cutoff);
            const auto cliques = srgg::collect_k_cliques(graph, k);
            std::string csv;
            for (int i = 1; i <= k; ++i) csv += "v" + std::to_string(i) + ",";
            csv += "max_len,long_edge_count\n";
            char buf[64];
            for (const auto& c : cliques) {
                for (auto v : c.vertices) {
                    csv += std::to_string(v);
                    csv += ',';
                }
                std::snprintf(buf, sizeof buf, "%.17g,%d\n", c.max_edge_length,
                              c.long_edge_count(graph, r_threshold));
                csv += buf;
            }
            if (out_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + out_path);
                out << csv;
            }
            return 0;
        }
    } catch (const srgg::ConfigError& e) {
        print_error(e.what(), e.key);
        return 2;
    } catch (const std::exception& e) {
        print_error(e.what());
        return 1;
    }
    return 0;
}
