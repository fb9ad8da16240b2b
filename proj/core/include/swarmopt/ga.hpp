#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "swarmopt/channel.hpp"
#include "swarmopt/geometry.hpp"
#include "swarmopt/routing.hpp"

namespace swarmopt {

/// One gene per UAV: a deployment-grid cell plus a beam direction.
struct Gene {
    GridIndex cell;
    double beam_deg = 0.0;

    bool operator==(const Gene&) const = default;
};

struct Chromosome {
    std::vector<Gene> genes;

    bool operator==(const Chromosome&) const = default;
};

struct GaConfig {
    int population_size = 100;
    int max_generations = 50;
    double mutation_rate = 0.15;
    double crossover_rate = 0.9;
    int tournament_size = 3;
    int inner_population_size = 20;
    int inner_max_generations = 15;
    std::optional<double> time_budget_s;
    std::uint64_t rng_seed = 1;
    int n_threads = 0;  // 0 = all hardware threads, 1 = sequential

    bool operator==(const GaConfig&) const = default;

    void validate() const;
};

/// Everything a fitness evaluation needs besides the genes.
struct FitnessEnv {
    GridSpec grid;
    Jammer jammer;
    RadiationPattern pattern = RadiationPattern::default_directional();
    ChannelParams channel;
    ObjectiveWeights weights;
};

std::vector<UavState> decode(const Chromosome& chromosome, const GridSpec& grid);

/// Chromosome invariants: in-bounds cells, no two genes on one cell,
/// normalized beams. Throws std::invalid_argument on violation.
void validate_chromosome(const Chromosome& chromosome, const GridSpec& grid);
bool chromosome_valid(const Chromosome& chromosome, const GridSpec& grid);

/// Objective value of a positions+beams configuration: capacity matrix ->
/// bottleneck routing -> OF. Deterministic when shadowing is off.
double evaluate_of(std::span<const Position> positions, std::span<const double> beams,
                   const FitnessEnv& env, std::mt19937_64* shadow_rng = nullptr);

/// Fitness of a full chromosome (positions and beams taken from the genes).
double fitness(const Chromosome& chromosome, const FitnessEnv& env,
               std::mt19937_64* shadow_rng = nullptr);

/// Draws tournament_size indices uniformly with replacement and returns the
/// index with maximum fitness; ties go to the lower population index.
std::size_t tournament_select(std::span<const double> fitnesses, int tournament_size,
                              std::mt19937_64& rng);

/// Single-point crossover over whole genes (position and beam travel
/// together). Children violating the one-UAV-per-cell rule are repaired by
/// redrawing the colliding gene among free neighbor cells, then the
/// recipient parent's cell, then any free cell.
std::pair<Chromosome, Chromosome> crossover_positions(const Chromosome& a, const Chromosome& b,
                                                      const GridSpec& grid, std::mt19937_64& rng);

/// Single-point crossover exchanging beam genes only; positions untouched.
std::pair<Chromosome, Chromosome> crossover_beams(const Chromosome& a, const Chromosome& b,
                                                  std::mt19937_64& rng);
std::pair<std::vector<double>, std::vector<double>> crossover_beams(const std::vector<double>& a,
                                                                    const std::vector<double>& b,
                                                                    std::mt19937_64& rng);

/// Each gene independently moves, with probability mutation_rate, to a
/// uniformly chosen free in-bounds Moore neighbor; stays put if none is free.
Chromosome mutate_position(const Chromosome& chromosome, const GridSpec& grid, double mutation_rate,
                           std::mt19937_64& rng);

/// Each selected beam gets a uniform deviation in [-20, +20] degrees,
/// normalized mod 360.
Chromosome mutate_beam(const Chromosome& chromosome, double mutation_rate, std::mt19937_64& rng);
std::vector<double> mutate_beam(const std::vector<double>& beams, double mutation_rate,
                                std::mt19937_64& rng);

inline constexpr double kBeamMutationRangeDeg = 20.0;

struct BeamGaResult {
    std::vector<double> beams;
    double best_of = 0.0;
    std::vector<double> of_history;   // [0] = initial population best
    std::vector<double> avg_history;  // population mean per generation
    std::vector<double> gen_elapsed_s;
    int generations_run = 0;
    double elapsed_s = 0.0;
    std::uint64_t fitness_evaluations = 0;
};

/// GA over beam vectors for fixed UAV positions: tournament selection,
/// beam crossover, bounded-angle mutation, single-elite carry-over.
/// seed_beams are injected verbatim into the initial population. With an
/// omnidirectional pattern the result OF is beam-independent and the search
/// short-circuits to a single evaluation.
BeamGaResult run_beam_ga(std::span<const Position> positions, const FitnessEnv& env,
                         int population_size, int max_generations, double mutation_rate,
                         double crossover_rate, int tournament_size, std::uint64_t seed,
                         std::span<const std::vector<double>> seed_beams = {},
                         std::optional<double> time_budget_s = {});

struct GaReport {
    Chromosome best_chromosome;        // empty genes when positions were not grid-based
    std::vector<UavState> best_states; // decoded phenotype: positions + beams
    double best_of = 0.0;
    std::vector<double> of_history;
    std::vector<double> avg_history;
    std::vector<double> gen_elapsed_s;
    int generations_run = 0;
    double elapsed_s = 0.0;
    std::uint64_t fitness_evaluations = 0;
};

/// Outer GA over UAV grid positions; each individual's fitness is the best
/// OF found by the nested beam GA on its positions. seed_chromosomes enter
/// the initial population and additionally seed their own beam vectors into
/// their nested GA, so a re-run on an unchanged environment can only improve
/// on them. Time budget is checked between generations; the first
/// generation always runs.
GaReport run_outer_ga(const FitnessEnv& env, int n_uav, const GaConfig& config,
                      std::span<const Chromosome> seed_chromosomes = {});

}  // namespace swarmopt
