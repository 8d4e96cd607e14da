// Command-line driver: run experiments with the network and/or oracle
// solver, or run the oracle h-convergence study.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgnet/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"DG-based solver for 1-D scalar conservation laws"};
    app.require_subcommand(1);

    dgnet::RunConfig cfg;
    std::string solver = "oracle";
    auto* run_cmd = app.add_subcommand("run", "run one experiment and write artifacts");
    run_cmd->set_config("--config", "", "config file overriding flags");
    run_cmd->add_option("--experiment", cfg.experiment, "experiment name")
        ->required()
        ->check(CLI::IsMember(dgnet::experiment_names()));
    run_cmd->add_option("--solver", solver, "network | oracle | both")
        ->check(CLI::IsMember({"network", "oracle", "both"}));
    std::size_t K = 0;
    double dt = 0.0, T = 0.0, lr = 0.0, tol = 0.0;
    std::size_t epochs = 0;
    std::vector<double> snaps;
    auto* optK = run_cmd->add_option("--K", K, "element count");
    auto* optdt = run_cmd->add_option("--dt", dt, "time step");
    auto* optT = run_cmd->add_option("--T", T, "final time");
    auto* optsn = run_cmd->add_option("--snapshots", snaps, "snapshot times");
    auto* opteb = run_cmd->add_option("--epochs", epochs, "epoch budget per step");
    auto* optlr = run_cmd->add_option("--lr", lr, "initial learning rate");
    auto* opttol = run_cmd->add_option("--tolerance", tol, "early-stop loss tolerance");
    run_cmd->add_option("--seed", cfg.seed, "RNG seed");
    run_cmd->add_option("--out", cfg.output_dir, "output directory");

    std::string conv_experiment = "advection-smooth";
    std::vector<std::size_t> conv_K = {32, 64, 128, 256};
    double conv_T = 1.0, conv_dt_ref = 0.004;
    auto* conv_cmd = app.add_subcommand("convergence", "oracle order-of-accuracy study");
    conv_cmd->add_option("--experiment", conv_experiment, "experiment name")
        ->check(CLI::IsMember(dgnet::experiment_names()));
    conv_cmd->add_option("--K", conv_K, "element counts");
    conv_cmd->add_option("--T", conv_T, "final time");
    conv_cmd->add_option("--dt-ref", conv_dt_ref, "time step at the reference K = 128");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            cfg.solver = dgnet::solver_from_string(solver);
            if (*optK) cfg.K = K;
            if (*optdt) cfg.dt = dt;
            if (*optT) cfg.T = T;
            if (*optsn) cfg.snapshot_times = snaps;
            if (*opteb) cfg.epochs = epochs;
            if (*optlr) cfg.initial_lr = lr;
            if (*opttol) cfg.tolerance = tol;
            const dgnet::RunResult r = dgnet::run(cfg);
            std::printf("wrote %zu snapshot file(s) under %s\n", r.csv_files.size(),
                        r.output_dir.c_str());
            return r.exit_code;
        }
        const dgnet::ConvergenceReport rep =
            dgnet::convergence_study(conv_experiment, conv_K, conv_dt_ref, 128, conv_T);
        std::printf("%8s  %14s  %8s\n", "K", "L2_error", "order");
        for (const auto& row : rep.rows) {
            if (row.observed_order)
                std::printf("%8zu  %14.6e  %8.3f\n", row.K, row.l2_error, *row.observed_order);
            else
                std::printf("%8zu  %14.6e  %8s\n", row.K, row.l2_error, "-");
        }
        if (!rep.note.empty()) std::printf("note: %s\n", rep.note.c_str());
        return 0;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver abort: %s\n", e.what());
        return 3;
    }
}
