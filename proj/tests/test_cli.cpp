#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "swarmopt/config_io.hpp"
#include "swarmopt/outputs.hpp"

using namespace swarmopt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CmdResult run_cmd(const std::string& args) {
    const fs::path log = fs::temp_directory_path() / "swarmopt_cli_test.log";
    const std::string cmd = std::string(SWARMOPT_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path tiny_config() {
    // small deterministic fixed-area run, fast enough to invoke repeatedly
    static const fs::path p = [] {
        const fs::path path = fs::temp_directory_path() / "swarmopt_tiny.json";
        std::ofstream out(path);
        out << R"({
  "kind": "fixed_area",
  "ga": {"population_size": 8, "max_generations": 4,
          "inner_population_size": 6, "inner_max_generations": 3,
          "rng_seed": 7, "n_threads": 1}
})";
        return path;
    }();
    return p;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "swarmopt_cli" / name;
    fs::remove_all(d);
    return d;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate accepts the shipped configs") {
    const fs::path dir = SWARMOPT_CONFIG_DIR;
    for (const char* name :
         {"scenario1_static.json", "scenario2_fixed_area.json", "scenario3_moving.json"}) {
        const CmdResult r = run_cmd("validate " + (dir / name).string());
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("OK") != std::string::npos);
    }
}

TEST_CASE("validate rejects missing and malformed configs with diagnostics") {
    CHECK(run_cmd("validate /nonexistent.json").exit_code != 0);

    const fs::path bad = fs::temp_directory_path() / "swarmopt_bad.json";
    std::ofstream(bad) << R"({"kind": "fixed_area", "ga": {"mutation_rate": 2.0}})";
    const CmdResult r = run_cmd("validate " + bad.string());
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("mutation_rate") != std::string::npos);
}

TEST_CASE("same seed twice gives byte-identical CSV and topology JSON") {
    const fs::path a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
    CHECK(run_cmd("run " + tiny_config().string() + " --seed 42 --out " + a.string()).exit_code == 0);
    CHECK(run_cmd("run " + tiny_config().string() + " --seed 42 --out " + b.string()).exit_code == 0);
    CHECK(slurp(a / "convergence.csv") == slurp(b / "convergence.csv"));
    CHECK(slurp(a / "topology_0.json") == slurp(b / "topology_0.json"));

    const fs::path c = scratch_dir("rerun_c");
    CHECK(run_cmd("run " + tiny_config().string() + " --seed 43 --out " + c.string()).exit_code == 0);
    CHECK(slurp(a / "topology_0.json") != slurp(c / "topology_0.json"));
}

TEST_CASE("every numeric in the topology re-derives from the manifest alone") {
    const fs::path a = scratch_dir("remanifest_a"), b = scratch_dir("remanifest_b");
    REQUIRE(run_cmd("run " + tiny_config().string() + " --seed 5 --out " + a.string()).exit_code == 0);

    json manifest;
    std::ifstream(a / "manifest.json") >> manifest;
    const fs::path replay = fs::temp_directory_path() / "swarmopt_replay.json";
    std::ofstream(replay) << manifest.at("scenario").dump(2);

    REQUIRE(run_cmd("run " + replay.string() + " --out " + b.string()).exit_code == 0);
    CHECK(slurp(a / "topology_0.json") == slurp(b / "topology_0.json"));
    CHECK(slurp(a / "convergence.csv") == slurp(b / "convergence.csv"));
}

TEST_CASE("the CSV generation count matches the report") {
    const fs::path a = scratch_dir("csv_count");
    REQUIRE(run_cmd("run " + tiny_config().string() + " --seed 9 --out " + a.string()).exit_code == 0);

    json manifest;
    std::ifstream(a / "manifest.json") >> manifest;
    const int generations = manifest.at("timing").at("windows").at(0).at("generations_run").get<int>();

    const auto rows = read_convergence_csv(a / "convergence.csv");
    CHECK(rows.back().generation == generations);
    CHECK(rows.size() == static_cast<std::size_t>(generations) + 1);
}

TEST_CASE("--omni forces the baseline antenna pattern") {
    const fs::path a = scratch_dir("omni");
    REQUIRE(run_cmd("run " + tiny_config().string() + " --seed 7 --omni --out " + a.string()).exit_code ==
            0);
    json manifest;
    std::ifstream(a / "manifest.json") >> manifest;
    CHECK(manifest.at("scenario").at("pattern").size() == 1);  // single omni sample
}

TEST_CASE("--time-budget caps the run") {
    const fs::path a = scratch_dir("budget");
    const CmdResult r =
        run_cmd("run " + tiny_config().string() + " --time-budget 0.5 --out " + a.string());
    CHECK(r.exit_code == 0);
    json manifest;
    std::ifstream(a / "manifest.json") >> manifest;
    CHECK(manifest.at("scenario").at("ga").at("time_budget_s").get<double>() == 0.5);
}

TEST_CASE("SWARMOPT_OUT provides the default output directory") {
    const fs::path base = scratch_dir("envout");
    const std::string cmd = "SWARMOPT_OUT=" + base.string() + " " + SWARMOPT_CLI_PATH + " run " +
                            tiny_config().string() + " --seed 3 > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(base / "swarmopt_tiny" / "convergence.csv"));
}

TEST_CASE("compare of a run against itself reports ratio 1") {
    const fs::path a = scratch_dir("cmp_a");
    REQUIRE(run_cmd("run " + tiny_config().string() + " --seed 11 --out " + a.string()).exit_code == 0);
    const CmdResult r = run_cmd("compare " + a.string() + " " + a.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("ratio=1") != std::string::npos);
}

TEST_CASE("compare contrasts beam-steering with the omni baseline") {
    const fs::path a = scratch_dir("cmp_beam"), b = scratch_dir("cmp_omni");
    REQUIRE(run_cmd("run " + tiny_config().string() + " --seed 11 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cmd("run " + tiny_config().string() + " --seed 11 --omni --out " + b.string()).exit_code ==
            0);
    const CmdResult r = run_cmd("compare " + a.string() + " " + b.string());
    CHECK(r.exit_code == 0);
    // beam-steering OF should dominate; the ratio line carries both values
    CHECK(r.output.find("best OF") != std::string::npos);

    const RunSummary sa = read_run_summary(a);
    const RunSummary sb = read_run_summary(b);
    CHECK(sa.best_of > sb.best_of);
}

TEST_CASE("compare refuses mismatched scenario kinds") {
    const fs::path a = scratch_dir("mismatch_a"), b = scratch_dir("mismatch_b");
    REQUIRE(run_cmd("run " + tiny_config().string() + " --seed 2 --out " + a.string()).exit_code == 0);
    const fs::path s1 = fs::path(SWARMOPT_CONFIG_DIR) / "scenario1_static.json";
    REQUIRE(run_cmd("run " + s1.string() + " --seed 2 --out " + b.string()).exit_code == 0);

    const CmdResult r = run_cmd("compare " + a.string() + " " + b.string());
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("kinds differ") != std::string::npos);
}

TEST_CASE("compare reports an infinite ratio instead of crashing on zero OF") {
    const auto fabricate = [](const fs::path& dir, double best_of) {
        fs::create_directories(dir);
        std::ofstream(dir / "manifest.json") << R"({"scenario": {"kind": "fixed_area"}})";
        std::ofstream(dir / "topology_0.json")
            << json{{"best_of", best_of},
                    {"e2e_bps", json::array({json::array({0.0, best_of}),
                                             json::array({best_of, 0.0})})}}
                   .dump();
        std::ofstream(dir / "convergence.csv")
            << "window,generation,best_of,avg_of\n0,0," << best_of << "," << best_of << "\n";
    };
    const fs::path a = scratch_dir("zero_a"), b = scratch_dir("zero_b");
    fabricate(a, 5.0);
    fabricate(b, 0.0);

    std::ostringstream out;
    compare_runs(a, b, out);
    CHECK(out.str().find("ratio=inf") != std::string::npos);
}

TEST_CASE("run exit status reflects scenario errors") {
    const fs::path bad = fs::temp_directory_path() / "swarmopt_badrun.json";
    std::ofstream(bad) << R"({"kind": "moving"})";
    const CmdResult r = run_cmd("run " + bad.string() + " --out " + scratch_dir("badrun").string());
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("motion") != std::string::npos);
}

TEST_CASE("an unwritable output directory fails with a message") {
    const CmdResult r = run_cmd("run " + tiny_config().string() + " --out /proc/swarmopt_denied");
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("--version prints the tool version") {
    const CmdResult r = run_cmd("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0.1.0") != std::string::npos);
}

TEST_CASE("a disabled jammer round-trips through the topology output") {
    const fs::path cfg = fs::temp_directory_path() / "swarmopt_nojam.json";
    std::ofstream(cfg) << R"({
  "kind": "fixed_area",
  "jammer": {"power_dbm": "off"},
  "ga": {"population_size": 6, "max_generations": 2,
          "inner_population_size": 6, "inner_max_generations": 2, "rng_seed": 1}
})";
    const fs::path out = scratch_dir("nojam");
    REQUIRE(run_cmd("run " + cfg.string() + " --out " + out.string()).exit_code == 0);

    json topo;
    std::ifstream(out / "topology_0.json") >> topo;
    CHECK(topo.at("jammer").at("power_dbm") == "off");

    json manifest;
    std::ifstream(out / "manifest.json") >> manifest;
    CHECK(manifest.at("scenario").at("jammer").at("power_dbm") == "off");
}

TEST_CASE("compare handles multi-window moving runs") {
    const fs::path cfg = fs::temp_directory_path() / "swarmopt_tinymove.json";
    std::ofstream(cfg) << R"({
  "kind": "moving",
  "ga": {"population_size": 6, "max_generations": 2,
          "inner_population_size": 6, "inner_max_generations": 2, "rng_seed": 1},
  "motion": {"speed_mps": 2, "heading_deg": 0, "window_s": 7.5, "n_windows": 2}
})";
    const fs::path a = scratch_dir("move_a"), b = scratch_dir("move_b");
    REQUIRE(run_cmd("run " + cfg.string() + " --seed 4 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cmd("run " + cfg.string() + " --seed 9 --out " + b.string()).exit_code == 0);

    const CmdResult r = run_cmd("compare " + a.string() + " " + b.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("scenario:    moving") != std::string::npos);
    CHECK(r.output.find("w1 g") != std::string::npos);  // rows from the second window
}

TEST_SUITE_END();
