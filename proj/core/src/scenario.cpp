#include "swarmopt/scenario.hpp"

#include <cmath>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>

#include "swarmopt/rng.hpp"

namespace swarmopt {

void MotionSpec::validate() const {
    if (!(speed_mps >= 0.0)) throw std::invalid_argument("motion.speed_mps must be >= 0");
    if (!(window_s > 0.0)) throw std::invalid_argument("motion.window_s must be > 0");
    if (n_windows < 1) throw std::invalid_argument("motion.n_windows must be >= 1");
    if (!(budget_guard_fraction >= 0.0 && budget_guard_fraction < 1.0))
        throw std::invalid_argument("motion.budget_guard_fraction must be in [0, 1)");
    if (!std::isfinite(heading_deg)) throw std::invalid_argument("motion.heading_deg must be finite");
}

void ScenarioConfig::validate() const {
    if (n_uav < 2) throw std::invalid_argument("n_uav must be >= 2");
    grid.validate();
    channel.validate();
    weights.validate();
    ga.validate();
    if (!std::isfinite(jammer.position.x) || !std::isfinite(jammer.position.y))
        throw std::invalid_argument("jammer.position must be finite");
    if (std::isnan(jammer.power_dbm) || jammer.power_dbm == INFINITY)
        throw std::invalid_argument("jammer.power_dbm must be finite or off");

    switch (kind) {
        case ScenarioKind::kStatic: {
            if (fixed_positions.size() != static_cast<std::size_t>(n_uav))
                throw std::invalid_argument("static scenario: fixed_positions must list one position per UAV");
            for (std::size_t i = 0; i < fixed_positions.size(); ++i)
                for (std::size_t j = i + 1; j < fixed_positions.size(); ++j)
                    if (fixed_positions[i] == fixed_positions[j])
                        throw std::invalid_argument("static scenario: fixed_positions " + std::to_string(i) +
                                                    " and " + std::to_string(j) + " coincide");
            break;
        }
        case ScenarioKind::kFixedArea: {
            if (grid.point_count() < static_cast<std::size_t>(n_uav))
                throw std::invalid_argument("deployment grid has fewer points than UAVs");
            break;
        }
        case ScenarioKind::kMoving: {
            if (!motion) throw std::invalid_argument("moving scenario: motion block required");
            motion->validate();
            if (grid.point_count() < static_cast<std::size_t>(n_uav))
                throw std::invalid_argument("deployment grid has fewer points than UAVs");
            break;
        }
    }
}

FitnessEnv make_env(const ScenarioConfig& config) {
    return FitnessEnv{config.grid, config.jammer, config.pattern, config.channel, config.weights};
}

Snapshot make_snapshot(std::span<const UavState> uavs, const ScenarioConfig& config) {
    Snapshot snap;
    snap.uavs.assign(uavs.begin(), uavs.end());
    snap.capacity = build_capacity_matrix(snap.uavs, config.jammer, config.pattern, config.channel);
    snap.routing = shortest_paths(snap.capacity);
    snap.of = objective(snap.routing, config.weights);
    return snap;
}

namespace {

std::vector<double> beams_of(const std::vector<UavState>& states) {
    std::vector<double> beams;
    beams.reserve(states.size());
    for (const UavState& s : states) beams.push_back(s.beam_deg);
    return beams;
}

GaReport report_from_beam_result(const BeamGaResult& inner, std::span<const Position> positions) {
    GaReport report;
    report.best_of = inner.best_of;
    report.of_history = inner.of_history;
    report.avg_history = inner.avg_history;
    report.generations_run = inner.generations_run;
    report.elapsed_s = inner.elapsed_s;
    report.fitness_evaluations = inner.fitness_evaluations;
    report.gen_elapsed_s = inner.gen_elapsed_s;
    for (std::size_t k = 0; k < positions.size(); ++k)
        report.best_states.push_back({positions[k], inner.beams[k]});
    return report;
}

}  // namespace

StaticResult run_static(const ScenarioConfig& config) {
    if (config.kind != ScenarioKind::kStatic)
        throw std::invalid_argument("run_static: config.kind is not static");
    config.validate();

    const FitnessEnv env = make_env(config);
    const BeamGaResult inner = run_beam_ga(
        config.fixed_positions, env, config.ga.population_size, config.ga.max_generations,
        config.ga.mutation_rate, config.ga.crossover_rate, config.ga.tournament_size,
        config.ga.rng_seed, {}, config.ga.time_budget_s);

    StaticResult result;
    result.report = report_from_beam_result(inner, config.fixed_positions);

    FitnessEnv omni_env = env;
    omni_env.pattern = RadiationPattern::omni();
    std::vector<double> flat(config.fixed_positions.size(), 0.0);
    if (config.channel.shadowing_sigma_db > 0.0) {
        std::mt19937_64 shadow =
            rng::make_engine(rng::derive_seed(config.ga.rng_seed, rng::kBaseline));
        result.omni_baseline_of = evaluate_of(config.fixed_positions, flat, omni_env, &shadow);
    } else {
        result.omni_baseline_of = evaluate_of(config.fixed_positions, flat, omni_env, nullptr);
    }
    return result;
}

GaReport run_fixed_area(const ScenarioConfig& config) {
    if (config.kind != ScenarioKind::kFixedArea)
        throw std::invalid_argument("run_fixed_area: config.kind is not fixed_area");
    config.validate();
    return run_outer_ga(make_env(config), config.n_uav, config.ga);
}

std::vector<WindowRecord> run_moving(const ScenarioConfig& config) {
    if (config.kind != ScenarioKind::kMoving)
        throw std::invalid_argument("run_moving: config.kind is not moving");
    config.validate();
    const MotionSpec& motion = *config.motion;

    const double heading_rad = motion.heading_deg * M_PI / 180.0;
    const double step = motion.speed_mps * motion.window_s;
    const double budget = motion.window_s * (1.0 - motion.budget_guard_fraction);

    std::vector<WindowRecord> records;
    records.reserve(motion.n_windows);
    std::vector<Chromosome> seeds;

    for (int w = 0; w < motion.n_windows; ++w) {
        ScenarioConfig window_cfg = config;
        // Origin computed from w directly so window geometry is exact.
        window_cfg.grid.origin = {config.grid.origin.x + w * step * std::cos(heading_rad),
                                  config.grid.origin.y + w * step * std::sin(heading_rad)};
        window_cfg.ga.time_budget_s = config.ga.time_budget_s
                                          ? std::min(*config.ga.time_budget_s, budget)
                                          : budget;
        window_cfg.ga.rng_seed = rng::derive_seed(config.ga.rng_seed, rng::kInner,
                                                  static_cast<std::uint64_t>(w));

        GaReport report = run_outer_ga(make_env(window_cfg), window_cfg.n_uav, window_cfg.ga, seeds);
        if (report.elapsed_s > budget) {
            std::cerr << "swarmopt: window " << w << " exceeded its compute budget (" << report.elapsed_s
                      << " s > " << budget << " s); optimization ran at least one generation\n";
        }

        // Grid indices are area-relative, so carrying the chromosome over
        // translates the formation with the deployment area.
        seeds.assign(1, report.best_chromosome);

        WindowRecord record;
        record.window_index = w;
        record.area_origin = window_cfg.grid.origin;
        record.snapshot = make_snapshot(report.best_states, window_cfg);
        record.report = std::move(report);
        records.push_back(std::move(record));
    }
    return records;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    ScenarioResult result;
    switch (config.kind) {
        case ScenarioKind::kStatic: {
            StaticResult sr = run_static(config);
            WindowRecord record;
            record.window_index = 0;
            record.area_origin = config.grid.origin;
            record.snapshot = make_snapshot(sr.report.best_states, config);
            record.report = std::move(sr.report);
            result.windows.push_back(std::move(record));
            result.omni_baseline_of = sr.omni_baseline_of;
            break;
        }
        case ScenarioKind::kFixedArea: {
            GaReport report = run_fixed_area(config);
            WindowRecord record;
            record.window_index = 0;
            record.area_origin = config.grid.origin;
            record.snapshot = make_snapshot(report.best_states, config);
            record.report = std::move(report);
            result.windows.push_back(std::move(record));
            break;
        }
        case ScenarioKind::kMoving:
            result.windows = run_moving(config);
            break;
    }
    return result;
}

}  // namespace swarmopt
