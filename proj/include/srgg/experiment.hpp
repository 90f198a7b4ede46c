#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "srgg/cliques.hpp"
#include "srgg/theory.hpp"

namespace srgg {

enum class ExperimentKind { frechet, poisson, scaling, localization, constants };
enum class BuilderKind { allpairs, tiered };

struct EpsilonSchedule {
    bool log_inverse = true;  // epsilon = 1/log(n); otherwise the fixed value
    double fixed_value = 0.0;

    double eval(double n) const;
};

struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(const std::string& msg, std::string key_ = "")
        : std::runtime_error(msg), key(std::move(key_)) {}
};

// Declarative experiment description; one flat key = value file.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::frechet;
    ModelParams params;
    long replications = 1;
    std::uint64_t master_seed = 0;
    std::vector<double> r_grid;      // explicit radii (scaling/localization)
    std::vector<double> ew_targets;  // or radii derived by inverting expected_w
    double r0 = 1.0;
    bool r0_set = false;
    EpsilonSchedule epsilon;
    BuilderKind builder = BuilderKind::tiered;
    double cutoff = 2.0;
    std::string output_dir = ".";
    int workers = 1;
    long mk_samples = 1000000;

    void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

// Per-replication persisted record; wall-clock stays in memory only so that
// identical configs produce byte-identical files.
struct ReplicationResult {
    long index = 0;
    StreamId stream;
    long n_points = 0;
    std::size_t n_edges = 0;
    std::vector<CliqueStatistics> stats;  // one entry per grid radius
    double seconds = 0.0;
};

// Runs the replications of `config` over the (r, epsilon) grid with the
// configured worker count; results are ordered by replication index and
// independent of the worker count.
std::vector<ReplicationResult> run_replications(const ExperimentConfig& config,
                                                const std::vector<std::pair<double, double>>& grid);

struct ExperimentOutcome {
    nlohmann::json report;
    int exit_code = 0;
    std::string output_dir;  // effective, after the environment override
};

// Dispatches on config.kind, writes report.json / replications.csv (and
// ecdf.csv for frechet) under the output directory.  SRGG_LAB_OUTPUT_DIR
// overrides the configured output directory.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

}  // namespace srgg
