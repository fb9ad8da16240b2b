#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "swarmopt/config_io.hpp"
#include "swarmopt/outputs.hpp"
#include "swarmopt/version.hpp"

namespace fs = std::filesystem;
using namespace swarmopt;

namespace {

fs::path default_out_dir(const fs::path& config_path) {
    if (const char* env = std::getenv("SWARMOPT_OUT")) return fs::path(env) / config_path.stem();
    return fs::path("swarmopt_out") / config_path.stem();
}

int run_command(const std::string& config_file, std::optional<std::uint64_t> seed, bool omni,
                std::optional<double> time_budget, std::optional<int> threads,
                std::optional<std::string> out_dir) {
    ScenarioConfig cfg = parse_scenario_config(config_file);
    if (seed) cfg.ga.rng_seed = *seed;
    if (omni) cfg.pattern = RadiationPattern::omni();
    if (time_budget) cfg.ga.time_budget_s = *time_budget;
    if (threads) cfg.ga.n_threads = *threads;

    const fs::path out = out_dir ? fs::path(*out_dir) : default_out_dir(config_file);
    const ScenarioResult result = run_scenario(cfg);
    write_run_outputs(out, cfg, result, config_file);

    for (const WindowRecord& rec : result.windows) {
        std::cout << "window " << rec.window_index << ": best OF " << format_double(rec.report.best_of)
                  << " after " << rec.report.generations_run << " generations ("
                  << format_double(rec.report.elapsed_s) << " s, "
                  << rec.report.fitness_evaluations << " evaluations)\n";
    }
    if (result.omni_baseline_of)
        std::cout << "omnidirectional baseline OF: " << format_double(*result.omni_baseline_of) << "\n";
    std::cout << "outputs written to " << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV swarm anti-jamming optimizer: formation, beam-steering and routing"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // run
    std::string run_config;
    std::optional<std::uint64_t> seed;
    std::optional<double> time_budget;
    std::optional<int> threads;
    std::optional<std::string> out_dir;
    bool omni = false;
    auto* run = app.add_subcommand("run", "Run a scenario config and write results");
    run->add_option("config", run_config, "Scenario config JSON file")->required();
    run->add_option("--seed", seed, "Override ga.rng_seed");
    run->add_flag("--omni", omni, "Force an omnidirectional UAV antenna pattern (baseline)");
    run->add_option("--time-budget", time_budget, "Wall-clock optimization budget in seconds");
    run->add_option("--threads", threads, "Fitness evaluation threads (0 = all cores, 1 = sequential)");
    run->add_option("--out", out_dir, "Output directory (default: $SWARMOPT_OUT/<config stem>)");

    // compare
    std::string dir_a, dir_b;
    auto* compare = app.add_subcommand("compare", "Compare two finished run directories");
    compare->add_option("dir_a", dir_a, "First run directory")->required();
    compare->add_option("dir_b", dir_b, "Second run directory")->required();

    // validate
    std::string val_config;
    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario config");
    validate->add_option("config", val_config, "Scenario config JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(run_config, seed, omni, time_budget, threads, out_dir);
        if (compare->parsed()) {
            compare_runs(dir_a, dir_b, std::cout);
            return 0;
        }
        if (validate->parsed()) {
            const ScenarioConfig cfg = parse_scenario_config(val_config);
            std::cout << scenario_to_json(cfg).dump(2) << "\n";
            std::cerr << "OK\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "swarmopt: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
