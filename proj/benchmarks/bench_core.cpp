#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "swarmopt/channel.hpp"
#include "swarmopt/config_io.hpp"
#include "swarmopt/ga.hpp"
#include "swarmopt/routing.hpp"

using namespace swarmopt;

namespace {

std::vector<UavState> fixture_swarm(int n) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(0.0, 50.0);
    std::uniform_real_distribution<double> beam(0.0, 360.0);
    std::vector<UavState> swarm;
    for (int k = 0; k < n; ++k) swarm.push_back({{coord(rng), coord(rng) * 0.8}, beam(rng)});
    return swarm;
}

FitnessEnv fixture_env() {
    FitnessEnv env;
    env.grid = GridSpec{{0, 0}, 50, 40, 5};
    env.jammer.position = {25.0, -50.0};
    return env;
}

}  // namespace

static void BM_CapacityMatrix(benchmark::State& state) {
    const auto swarm = fixture_swarm(static_cast<int>(state.range(0)));
    const FitnessEnv env = fixture_env();
    for (auto _ : state) {
        auto cm = build_capacity_matrix(swarm, env.jammer, env.pattern, env.channel);
        benchmark::DoNotOptimize(cm);
    }
}
BENCHMARK(BM_CapacityMatrix)->Arg(4)->Arg(8)->Arg(16);

static void BM_ShortestPaths(benchmark::State& state) {
    const auto swarm = fixture_swarm(static_cast<int>(state.range(0)));
    const FitnessEnv env = fixture_env();
    const auto cm = build_capacity_matrix(swarm, env.jammer, env.pattern, env.channel);
    for (auto _ : state) {
        auto r = shortest_paths(cm);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_ShortestPaths)->Arg(4)->Arg(8)->Arg(16);

static void BM_FitnessEvaluation(benchmark::State& state) {
    const FitnessEnv env = fixture_env();
    Chromosome c;
    c.genes = {{{1, 1}, 30.0}, {{8, 1}, 150.0}, {{8, 6}, 210.0}, {{1, 6}, 330.0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(fitness(c, env));
    }
}
BENCHMARK(BM_FitnessEvaluation);

static void BM_BeamGa(benchmark::State& state) {
    const FitnessEnv env = fixture_env();
    const std::vector<Position> positions = {{5, 5}, {45, 5}, {45, 35}, {5, 35}};
    for (auto _ : state) {
        auto r = run_beam_ga(positions, env, 20, 15, 0.15, 0.9, 3, 1);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_BeamGa);

static void BM_OuterGeneration(benchmark::State& state) {
    GaConfig cfg;
    cfg.population_size = 14;
    cfg.max_generations = 1;
    cfg.n_threads = 1;
    cfg.rng_seed = 1;
    for (auto _ : state) {
        auto r = run_outer_ga(fixture_env(), 4, cfg);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_OuterGeneration);

BENCHMARK_MAIN();
