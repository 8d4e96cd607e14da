#ifndef DGNET_RUNNER_HPP
#define DGNET_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "dgnet/experiments.hpp"

namespace dgnet {

enum class SolverChoice { Network, Oracle, Both };

std::string to_string(SolverChoice s);
SolverChoice solver_from_string(const std::string& s);

/// Effective configuration of one run; overrides fall back to the
/// experiment defaults when unset.
struct RunConfig {
    std::string experiment;
    SolverChoice solver = SolverChoice::Oracle;
    std::optional<std::size_t> K;
    std::optional<double> dt;
    std::optional<double> T;
    std::optional<std::vector<double>> snapshot_times;
    std::uint64_t seed = 0;
    std::optional<std::size_t> epochs;
    std::optional<double> initial_lr;
    std::optional<double> tolerance;
    std::optional<RDNConfig> net;
    std::string output_dir = "out";

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);  // rejects unknown keys
};

struct RunResult {
    int exit_code = 0;
    std::string output_dir;  // resolved (env root applied)
    std::vector<std::string> csv_files;
    std::string metrics_file;
    std::string manifest_file;
};

/// Executes a run and writes the artifact set (snapshot CSVs, metrics
/// JSON, training log, checkpoint, manifest) under the output directory,
/// which is created if needed. The DGNET_OUT_ROOT environment variable,
/// when set, prefixes relative output directories.
RunResult run(const RunConfig& config);

/// Network time-marching solve; snapshots are hit exactly by shrinking the
/// final partial step. Returns snapshots plus per-step training stats.
struct NetworkSolveResult {
    std::vector<ElementField> snapshots;
    std::vector<double> snapshot_times;
    std::vector<std::size_t> epochs_per_step;
    std::vector<double> final_losses;
    std::vector<EpochRecord> log;  // concatenated epoch records
    std::size_t steps_taken = 0;
};

NetworkSolveResult network_solve(const ExperimentSpec& exp, const Discretization& disc,
                                 NetworkParams& params, const TrainConfig& cfg,
                                 double dt, double T,
                                 const std::vector<double>& snapshot_times);

struct ConvergenceRow {
    std::size_t K = 0;
    double l2_error = 0.0;
    std::optional<double> observed_order;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool orders_valid = true;  // false for non-smooth experiments
    std::string note;
};

/// Oracle-only h-refinement study; dt scales as dt_ref * K_ref / K.
ConvergenceReport convergence_study(const std::string& experiment,
                                    const std::vector<std::size_t>& K_list,
                                    double dt_ref = 0.004, std::size_t K_ref = 128,
                                    double T = 1.0);

}  // namespace dgnet

#endif
