#include <doctest.h>

#include <stdexcept>
#include <limits>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dgnet/runner.hpp"

using namespace dgnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

nlohmann::json metrics_without_walltime(const std::string& path) {
    auto j = nlohmann::json::parse(slurp(path));
    j.erase("wall_time_seconds");
    return j;
}

}  // namespace

TEST_CASE("run config round-trips through JSON and rejects unknown keys") {
    RunConfig cfg;
    cfg.experiment = "burgers";
    cfg.solver = SolverChoice::Both;
    cfg.K = 64;
    cfg.dt = 0.002;
    cfg.T = 0.4;
    cfg.snapshot_times = std::vector<double>{0.1, 0.2};
    cfg.seed = 17;
    cfg.epochs = 50;
    cfg.initial_lr = 5e-4;
    cfg.tolerance = 1e-7;
    RDNConfig net;
    net.blocks = 2;
    net.layers = 3;
    net.growth = 8;
    net.features = 8;
    cfg.net = net;
    cfg.output_dir = "some/dir";

    const std::string text = cfg.to_json();
    auto back = RunConfig::from_json(text);
    CHECK(back.to_json() == text);
    CHECK(back.experiment == "burgers");
    CHECK(back.solver == SolverChoice::Both);
    CHECK(*back.K == 64);
    CHECK(back.net->growth == 8);

    CHECK_THROWS_AS(RunConfig::from_json(R"({"experiment":"burgers","bogus":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json(R"({"experiment":"burgers","net":{"depth":3}})"),
                    std::invalid_argument);
}

TEST_CASE("oracle run writes the artifact set") {
    TempDir dir("dgnet_test_oracle_run");
    RunConfig cfg;
    cfg.experiment = "advection-smooth";
    cfg.solver = SolverChoice::Oracle;
    cfg.T = 0.2;
    cfg.snapshot_times = std::vector<double>{0.1, 0.2};
    cfg.output_dir = (dir.path / "run1").string();

    auto res = run(cfg);
    CHECK(res.exit_code == 0);
    REQUIRE(res.csv_files.size() == 2);

    for (const auto& csv : res.csv_files) {
        std::ifstream f(csv);
        REQUIRE(f.good());
        std::string header;
        std::getline(f, header);
        CHECK(header == "x,u_numeric,u_exact,abs_error");
        std::size_t rows = 0, duplicates = 0;
        double prev_x = -1e300;
        std::string line;
        while (std::getline(f, line)) {
            const double x = std::stod(line.substr(0, line.find(',')));
            CHECK(x >= prev_x);
            if (x == prev_x) ++duplicates;
            prev_x = x;
            ++rows;
        }
        CHECK(rows == 256);       // K * N_p at the default K = 128
        CHECK(duplicates == 127); // one duplicated coordinate per interior interface
    }

    auto metrics = nlohmann::json::parse(slurp(res.metrics_file));
    REQUIRE(metrics.contains("snapshots"));
    CHECK(metrics["snapshots"].size() == 2);
    for (const auto& snap : metrics["snapshots"]) {
        CHECK(snap.contains("mse"));
        CHECK(snap.contains("l2"));
        CHECK(snap.contains("linf"));
    }

    auto manifest = nlohmann::json::parse(slurp(res.manifest_file));
    REQUIRE(manifest.contains("config"));
    auto echoed = RunConfig::from_json(manifest["config"].dump());
    CHECK(echoed.to_json() == cfg.to_json());
    CHECK(manifest.contains("seed"));
    CHECK(manifest.contains("version"));
}

TEST_CASE("identical oracle runs are byte-identical") {
    TempDir dir("dgnet_test_oracle_det");
    RunConfig cfg;
    cfg.experiment = "burgers";
    cfg.solver = SolverChoice::Oracle;
    cfg.T = 0.1;
    cfg.snapshot_times = std::vector<double>{0.1};

    cfg.output_dir = (dir.path / "a").string();
    auto ra = run(cfg);
    cfg.output_dir = (dir.path / "b").string();
    auto rb = run(cfg);

    REQUIRE(ra.csv_files.size() == rb.csv_files.size());
    for (std::size_t i = 0; i < ra.csv_files.size(); ++i)
        CHECK(slurp(ra.csv_files[i]) == slurp(rb.csv_files[i]));
    CHECK(metrics_without_walltime(ra.metrics_file) ==
          metrics_without_walltime(rb.metrics_file));
}

TEST_CASE("small network runs are deterministic and write training artifacts") {
    TempDir dir("dgnet_test_net_det");
    RunConfig cfg;
    cfg.experiment = "advection-smooth";
    cfg.solver = SolverChoice::Both;
    cfg.K = 16;
    cfg.dt = 0.01;
    cfg.T = 0.02;
    cfg.snapshot_times = std::vector<double>{0.02};
    cfg.seed = 3;
    cfg.epochs = 5;
    RDNConfig net;
    net.blocks = 1;
    net.layers = 2;
    net.growth = 4;
    net.features = 4;
    cfg.net = net;

    cfg.output_dir = (dir.path / "a").string();
    auto ra = run(cfg);
    cfg.output_dir = (dir.path / "b").string();
    auto rb = run(cfg);
    CHECK(ra.exit_code == 0);

    REQUIRE(ra.csv_files.size() == rb.csv_files.size());
    for (std::size_t i = 0; i < ra.csv_files.size(); ++i)
        CHECK(slurp(ra.csv_files[i]) == slurp(rb.csv_files[i]));
    CHECK(metrics_without_walltime(ra.metrics_file) ==
          metrics_without_walltime(rb.metrics_file));

    // training artifacts exist for network runs
    const fs::path out(ra.output_dir);
    CHECK(fs::exists(out / "train_log.jsonl"));
    CHECK(fs::exists(out / "model.ckpt"));
    auto metrics = nlohmann::json::parse(slurp(ra.metrics_file));
    CHECK(metrics.contains("training"));
    CHECK(metrics.contains("discrepancy"));  // solver = both
}

TEST_CASE("convergence study handles edge cases") {
    auto single = convergence_study("advection-smooth", {32}, 0.004, 128, 0.25);
    REQUIRE(single.rows.size() == 1);
    CHECK_FALSE(single.rows[0].observed_order.has_value());

    auto rough = convergence_study("advection-jump", {32, 64}, 0.004, 128, 0.1);
    CHECK_FALSE(rough.orders_valid);
    CHECK_FALSE(rough.note.empty());
    for (const auto& row : rough.rows) CHECK_FALSE(row.observed_order.has_value());
}

TEST_CASE("solver name parsing") {
    CHECK(solver_from_string("network") == SolverChoice::Network);
    CHECK(solver_from_string("oracle") == SolverChoice::Oracle);
    CHECK(solver_from_string("both") == SolverChoice::Both);
    CHECK_THROWS_AS(solver_from_string("magic"), std::invalid_argument);
    CHECK(to_string(SolverChoice::Both) == "both");
}
