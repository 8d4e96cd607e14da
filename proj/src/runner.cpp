#include "dgnet/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dgnet/timestep.hpp"

namespace dgnet {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {
constexpr const char* kVersion = "dgnet 0.1.0";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

std::string to_string(SolverChoice s) {
    switch (s) {
        case SolverChoice::Network: return "network";
        case SolverChoice::Oracle: return "oracle";
        case SolverChoice::Both: return "both";
    }
    return "?";
}

SolverChoice solver_from_string(const std::string& s) {
    if (s == "network") return SolverChoice::Network;
    if (s == "oracle") return SolverChoice::Oracle;
    if (s == "both") return SolverChoice::Both;
    throw std::invalid_argument("unknown solver: " + s);
}

std::string RunConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["solver"] = dgnet::to_string(solver);
    if (K) j["K"] = *K;
    if (dt) j["dt"] = *dt;
    if (T) j["T"] = *T;
    if (snapshot_times) j["snapshot_times"] = *snapshot_times;
    j["seed"] = seed;
    if (epochs) j["epochs"] = *epochs;
    if (initial_lr) j["initial_lr"] = *initial_lr;
    if (tolerance) j["tolerance"] = *tolerance;
    if (net) {
        j["net"] = {{"blocks", net->blocks},
                    {"layers", net->layers},
                    {"growth", net->growth},
                    {"features", net->features},
                    {"kernel_size", net->kernel_size}};
    }
    j["output_dir"] = output_dir;
    return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
    const json j = json::parse(text);
    RunConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "experiment") c.experiment = value.get<std::string>();
        else if (key == "solver") c.solver = solver_from_string(value.get<std::string>());
        else if (key == "K") c.K = value.get<std::size_t>();
        else if (key == "dt") c.dt = value.get<double>();
        else if (key == "T") c.T = value.get<double>();
        else if (key == "snapshot_times") c.snapshot_times = value.get<std::vector<double>>();
        else if (key == "seed") c.seed = value.get<std::uint64_t>();
        else if (key == "epochs") c.epochs = value.get<std::size_t>();
        else if (key == "initial_lr") c.initial_lr = value.get<double>();
        else if (key == "tolerance") c.tolerance = value.get<double>();
        else if (key == "output_dir") c.output_dir = value.get<std::string>();
        else if (key == "net") {
            RDNConfig n;
            for (const auto& [nk, nv] : value.items()) {
                if (nk == "blocks") n.blocks = nv.get<std::size_t>();
                else if (nk == "layers") n.layers = nv.get<std::size_t>();
                else if (nk == "growth") n.growth = nv.get<std::size_t>();
                else if (nk == "features") n.features = nv.get<std::size_t>();
                else if (nk == "kernel_size") n.kernel_size = nv.get<std::size_t>();
                else throw std::invalid_argument("RunConfig: unknown key net." + nk);
            }
            c.net = n;
        } else {
            throw std::invalid_argument("RunConfig: unknown key " + key);
        }
    }
    return c;
}

NetworkSolveResult network_solve(const ExperimentSpec& exp, const Discretization& disc,
                                 NetworkParams& params, const TrainConfig& cfg,
                                 double dt, double T,
                                 const std::vector<double>& snapshot_times) {
    NetworkSolveResult result;
    ElementField u =
        project_initial_condition(exp.prob.u0, disc.mesh, disc.layout, disc.basis);
    apply_dirichlet_in_place(u, exp.prob.bc, 0.0);

    std::vector<double> marks = snapshot_times;
    marks.push_back(T);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    AdamState adam(params.tensors(), cfg.adam);
    SchedulerState sched;
    sched.lr = cfg.initial_lr;
    sched.cfg = cfg.scheduler;

    double t = 0.0;
    const double eps = 1e-12 * std::max(1.0, T);
    for (double mark : marks) {
        if (mark > T + eps) break;
        while (t < mark - eps) {
            const double step = std::min(dt, mark - t);
            TrainStepResult r =
                train_time_step(u, params, exp.prob, t, step, disc, cfg, adam, sched);
            u = std::move(r.u_next);
            t += step;
            ++result.steps_taken;
            result.epochs_per_step.push_back(r.history.size());
            result.final_losses.push_back(r.final_loss);
            for (const auto& rec : r.history) result.log.push_back(rec);
        }
        for (double want : snapshot_times) {
            if (std::abs(want - mark) <= eps) {
                ElementField snap = u;
                snap.time = mark;
                result.snapshots.push_back(std::move(snap));
                result.snapshot_times.push_back(mark);
            }
        }
    }
    return result;
}

namespace {

void write_snapshot_csv(const std::string& path, const ElementField& u,
                        const Discretization& disc, const AnalyticFn* analytic, double t) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "x,u_numeric,u_exact,abs_error\n";
    for (std::size_t k = 0; k < u.K; ++k) {
        for (std::size_t n = 0; n < u.N_p; ++n) {
            const double x = disc.layout.node_coords[k * u.N_p + n];
            Side side = Side::Interior;
            if (n == 0) side = Side::Right;
            if (n == u.N_p - 1) side = Side::Left;
            const double num = u(k, n);
            if (analytic) {
                const double ex = (*analytic)(x, t, side);
                f << fmt_double(x) << ',' << fmt_double(num) << ',' << fmt_double(ex) << ','
                  << fmt_double(std::abs(num - ex)) << '\n';
            } else {
                f << fmt_double(x) << ',' << fmt_double(num) << ",,\n";
            }
        }
    }
}

json metrics_entry(const ElementField& u, const ExperimentSpec& exp,
                   const Discretization& disc, double t, const std::string& solver) {
    json j;
    j["t"] = t;
    j["solver"] = solver;
    if (exp.prob.analytic) {
        const ErrorMetrics m =
            error_metrics(u, *exp.prob.analytic, disc.mesh, disc.layout, t);
        j["mse"] = m.mse;
        j["l1"] = m.l1;
        j["l2"] = m.l2;
        j["linf"] = m.linf;
    }
    return j;
}

}  // namespace

RunResult run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentSpec exp = experiment_by_name(config.experiment);
    if (config.K) exp.K = *config.K;
    if (config.dt) exp.dt = *config.dt;
    if (config.T) exp.T = *config.T;
    if (config.snapshot_times) exp.snapshot_times = *config.snapshot_times;
    if (config.epochs) exp.trainer.epochs = *config.epochs;
    if (config.initial_lr) exp.trainer.initial_lr = *config.initial_lr;
    if (config.tolerance) exp.trainer.tolerance = *config.tolerance;
    if (config.net) exp.net = *config.net;
    exp.trainer.seed = config.seed;
    // snapshots outside the horizon are dropped
    std::vector<double> snaps;
    for (double s : exp.snapshot_times)
        if (s <= exp.T + 1e-12) snaps.push_back(s);
    exp.snapshot_times = snaps;

    fs::path out_dir = config.output_dir;
    if (const char* root = std::getenv("DGNET_OUT_ROOT"); root && out_dir.is_relative())
        out_dir = fs::path(root) / out_dir;
    fs::create_directories(out_dir);

    const Discretization disc = exp.discretize();
    const AnalyticFn* analytic = exp.prob.analytic ? &*exp.prob.analytic : nullptr;

    RunResult result;
    result.output_dir = out_dir.string();
    json metrics;
    metrics["experiment"] = exp.name;
    metrics["solver"] = to_string(config.solver);
    metrics["snapshots"] = json::array();

    std::vector<ElementField> oracle_snaps, net_snaps;
    if (config.solver == SolverChoice::Oracle || config.solver == SolverChoice::Both) {
        OracleResult orc = oracle_solve(exp.prob, disc, exp.dt, exp.T, exp.snapshot_times);
        oracle_snaps = std::move(orc.snapshots);
        for (std::size_t i = 0; i < oracle_snaps.size(); ++i) {
            const double t = orc.snapshot_times[i];
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_oracle_t%.4f.csv", t);
            const std::string path = (out_dir / name).string();
            write_snapshot_csv(path, oracle_snaps[i], disc, analytic, t);
            result.csv_files.push_back(path);
            metrics["snapshots"].push_back(
                metrics_entry(oracle_snaps[i], exp, disc, t, "oracle"));
        }
    }
    if (config.solver == SolverChoice::Network || config.solver == SolverChoice::Both) {
        NetworkParams params(exp.net, config.seed);
        NetworkSolveResult net =
            network_solve(exp, disc, params, exp.trainer, exp.dt, exp.T, exp.snapshot_times);
        net_snaps = std::move(net.snapshots);
        for (std::size_t i = 0; i < net_snaps.size(); ++i) {
            const double t = net.snapshot_times[i];
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_network_t%.4f.csv", t);
            const std::string path = (out_dir / name).string();
            write_snapshot_csv(path, net_snaps[i], disc, analytic, t);
            result.csv_files.push_back(path);
            metrics["snapshots"].push_back(
                metrics_entry(net_snaps[i], exp, disc, t, "network"));
        }
        metrics["training"] = {{"epochs_per_step", net.epochs_per_step},
                               {"final_losses", net.final_losses},
                               {"steps", net.steps_taken}};
        // line-delimited epoch log
        std::ofstream log(out_dir / "train_log.jsonl");
        for (const auto& rec : net.log) {
            json rj = {{"epoch", rec.epoch}, {"loss", rec.loss}, {"lr", rec.lr}};
            log << rj.dump() << '\n';
        }
        params.save((out_dir / "model.ckpt").string());
    }
    if (config.solver == SolverChoice::Both) {
        metrics["discrepancy"] = json::array();
        for (std::size_t i = 0; i < std::min(oracle_snaps.size(), net_snaps.size()); ++i) {
            double linf = 0.0, sq = 0.0;
            for (std::size_t d = 0; d < oracle_snaps[i].size(); ++d) {
                const double e = oracle_snaps[i].data[d] - net_snaps[i].data[d];
                linf = std::max(linf, std::abs(e));
                sq += e * e;
            }
            metrics["discrepancy"].push_back(
                {{"t", oracle_snaps[i].time},
                 {"linf", linf},
                 {"l2", std::sqrt(sq / static_cast<double>(oracle_snaps[i].size()))}});
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    metrics["wall_time_seconds"] = wall;
    result.metrics_file = (out_dir / "metrics.json").string();
    {
        std::ofstream f(result.metrics_file);
        f << metrics.dump(2) << '\n';
    }

    json manifest;
    manifest["version"] = kVersion;
    manifest["seed"] = config.seed;
    manifest["config"] = json::parse(config.to_json());
    manifest["effective"] = {{"experiment", exp.name}, {"K", exp.K},
                             {"N_p", exp.N_p},         {"dt", exp.dt},
                             {"T", exp.T},             {"snapshot_times", exp.snapshot_times},
                             {"epochs", exp.trainer.epochs}};
    manifest["wall_time_seconds"] = wall;
    result.manifest_file = (out_dir / "manifest.json").string();
    {
        std::ofstream f(result.manifest_file);
        f << manifest.dump(2) << '\n';
    }
    return result;
}

ConvergenceReport convergence_study(const std::string& experiment,
                                    const std::vector<std::size_t>& K_list,
                                    double dt_ref, std::size_t K_ref, double T) {
    ConvergenceReport report;
    ExperimentSpec base = experiment_by_name(experiment);
    if (experiment != "advection-smooth") {
        report.orders_valid = false;
        report.note = "order column suppressed: experiment is not smooth";
    }
    std::vector<double> errors;
    for (std::size_t K : K_list) {
        ExperimentSpec e = base;
        e.K = K;
        const Discretization disc = e.discretize();
        const double dt = dt_ref * static_cast<double>(K_ref) / static_cast<double>(K);
        OracleResult orc = oracle_solve(e.prob, disc, dt, T, {T});
        const ErrorMetrics m =
            error_metrics(orc.snapshots.front(), *e.prob.analytic, disc.mesh, disc.layout, T);
        errors.push_back(m.l2);
        report.rows.push_back({K, m.l2, std::nullopt});
    }
    if (report.orders_valid) {
        for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
            report.rows[i + 1].observed_order = std::log2(errors[i] / errors[i + 1]);
    }
    return report;
}

}  // namespace dgnet
