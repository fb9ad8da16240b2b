#include "swarmopt/ga.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "swarmopt/parallel.hpp"
#include "swarmopt/rng.hpp"

namespace swarmopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double unif01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::size_t draw_cut(std::size_t n_genes, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::size_t>(1, n_genes - 1)(rng);
}

std::size_t best_index(std::span<const double> fitnesses) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < fitnesses.size(); ++k)
        if (fitnesses[k] > fitnesses[best]) best = k;
    return best;
}

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

void GaConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("ga.population_size must be >= 2");
    if (max_generations < 0) throw std::invalid_argument("ga.max_generations must be >= 0");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw std::invalid_argument("ga.mutation_rate must be in [0, 1]");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw std::invalid_argument("ga.crossover_rate must be in [0, 1]");
    if (tournament_size < 2) throw std::invalid_argument("ga.tournament_size must be >= 2");
    if (inner_population_size < 2) throw std::invalid_argument("ga.inner_population_size must be >= 2");
    if (inner_max_generations < 0)
        throw std::invalid_argument("ga.inner_max_generations must be >= 0");
    if (time_budget_s && !(*time_budget_s > 0.0))
        throw std::invalid_argument("ga.time_budget_s must be > 0 when set");
    if (n_threads < 0) throw std::invalid_argument("ga.n_threads must be >= 0");
}

std::vector<UavState> decode(const Chromosome& chromosome, const GridSpec& grid) {
    std::vector<UavState> states;
    states.reserve(chromosome.genes.size());
    for (const Gene& g : chromosome.genes)
        states.push_back({grid.point(g.cell), normalize_deg(g.beam_deg)});
    return states;
}

void validate_chromosome(const Chromosome& chromosome, const GridSpec& grid) {
    if (chromosome.genes.empty()) throw std::invalid_argument("chromosome: no genes");
    std::set<GridIndex> seen;
    for (std::size_t k = 0; k < chromosome.genes.size(); ++k) {
        const Gene& g = chromosome.genes[k];
        if (!grid.contains(g.cell))
            throw std::invalid_argument("chromosome: gene " + std::to_string(k) +
                                        " outside the deployment area");
        if (!seen.insert(g.cell).second)
            throw std::invalid_argument("chromosome: gene " + std::to_string(k) +
                                        " shares a grid cell with another gene");
        if (!(g.beam_deg >= 0.0 && g.beam_deg < 360.0))
            throw std::invalid_argument("chromosome: gene " + std::to_string(k) +
                                        " beam not normalized to [0, 360)");
    }
}

bool chromosome_valid(const Chromosome& chromosome, const GridSpec& grid) {
    try {
        validate_chromosome(chromosome, grid);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

double evaluate_of(std::span<const Position> positions, std::span<const double> beams,
                   const FitnessEnv& env, std::mt19937_64* shadow_rng) {
    const std::size_t n = positions.size();
    thread_local std::vector<UavState> states;
    thread_local std::vector<double> e2e;
    thread_local RoutingScratch scratch;

    states.clear();
    for (std::size_t k = 0; k < n; ++k)
        states.push_back({positions[k], normalize_deg(beams[k])});

    const CapacityMatrix cm =
        build_capacity_matrix(states, env.jammer, env.pattern, env.channel, shadow_rng);
    e2e.assign(n * n, 0.0);
    bottleneck_capacities(cm, scratch, e2e);
    return objective_from_e2e(e2e, n, env.weights);
}

double fitness(const Chromosome& chromosome, const FitnessEnv& env, std::mt19937_64* shadow_rng) {
    const std::vector<UavState> states = decode(chromosome, env.grid);
    std::vector<Position> positions;
    std::vector<double> beams;
    positions.reserve(states.size());
    beams.reserve(states.size());
    for (const UavState& s : states) {
        positions.push_back(s.position);
        beams.push_back(s.beam_deg);
    }
    return evaluate_of(positions, beams, env, shadow_rng);
}

std::size_t tournament_select(std::span<const double> fitnesses, int tournament_size,
                              std::mt19937_64& rng) {
    if (fitnesses.empty()) throw std::invalid_argument("tournament_select: empty population");
    std::uniform_int_distribution<std::size_t> pick(0, fitnesses.size() - 1);
    std::size_t best = pick(rng);
    for (int t = 1; t < tournament_size; ++t) {
        const std::size_t c = pick(rng);
        if (fitnesses[c] > fitnesses[best] || (fitnesses[c] == fitnesses[best] && c < best)) best = c;
    }
    return best;
}

namespace {

// Re-places the donated genes of child[k..N) that collide with already
// placed cells: free Moore neighbor of the donor cell first, then the
// recipient parent's own cell, then any free cell.
void repair_collisions(Chromosome& child, const Chromosome& recipient, const GridSpec& grid,
                       std::size_t cut, std::mt19937_64& rng) {
    std::set<GridIndex> occupied;
    for (std::size_t s = 0; s < cut; ++s) occupied.insert(child.genes[s].cell);

    for (std::size_t s = cut; s < child.genes.size(); ++s) {
        GridIndex cell = child.genes[s].cell;
        if (occupied.insert(cell).second) continue;

        std::vector<GridIndex> frees;
        for (GridIndex nb : grid.moore_neighbors(cell))
            if (!occupied.count(nb)) frees.push_back(nb);
        if (!frees.empty()) {
            cell = frees[std::uniform_int_distribution<std::size_t>(0, frees.size() - 1)(rng)];
        } else if (!occupied.count(recipient.genes[s].cell)) {
            cell = recipient.genes[s].cell;
        } else {
            frees.clear();
            for (GridIndex any : grid.all_points())
                if (!occupied.count(any)) frees.push_back(any);
            // grid feasibility (points >= genes) guarantees a free cell
            cell = frees[std::uniform_int_distribution<std::size_t>(0, frees.size() - 1)(rng)];
        }
        occupied.insert(cell);
        child.genes[s].cell = cell;
    }
}

}  // namespace

std::pair<Chromosome, Chromosome> crossover_positions(const Chromosome& a, const Chromosome& b,
                                                      const GridSpec& grid, std::mt19937_64& rng) {
    const std::size_t n = a.genes.size();
    if (n != b.genes.size())
        throw std::invalid_argument("crossover_positions: parents differ in gene count");
    if (n < 2) return {a, b};

    const std::size_t k = draw_cut(n, rng);
    Chromosome ca = a, cb = b;
    for (std::size_t s = k; s < n; ++s) {
        ca.genes[s] = b.genes[s];
        cb.genes[s] = a.genes[s];
    }
    repair_collisions(ca, a, grid, k, rng);
    repair_collisions(cb, b, grid, k, rng);
    return {std::move(ca), std::move(cb)};
}

std::pair<std::vector<double>, std::vector<double>> crossover_beams(const std::vector<double>& a,
                                                                    const std::vector<double>& b,
                                                                    std::mt19937_64& rng) {
    const std::size_t n = a.size();
    if (n != b.size()) throw std::invalid_argument("crossover_beams: parents differ in gene count");
    if (n < 2) return {a, b};
    const std::size_t k = draw_cut(n, rng);
    std::vector<double> ca = a, cb = b;
    for (std::size_t s = k; s < n; ++s) std::swap(ca[s], cb[s]);
    return {std::move(ca), std::move(cb)};
}

std::pair<Chromosome, Chromosome> crossover_beams(const Chromosome& a, const Chromosome& b,
                                                  std::mt19937_64& rng) {
    const std::size_t n = a.genes.size();
    if (n != b.genes.size()) throw std::invalid_argument("crossover_beams: parents differ in gene count");
    if (n < 2) return {a, b};
    const std::size_t k = draw_cut(n, rng);
    Chromosome ca = a, cb = b;
    for (std::size_t s = k; s < n; ++s) std::swap(ca.genes[s].beam_deg, cb.genes[s].beam_deg);
    return {std::move(ca), std::move(cb)};
}

Chromosome mutate_position(const Chromosome& chromosome, const GridSpec& grid, double mutation_rate,
                           std::mt19937_64& rng) {
    Chromosome out = chromosome;
    std::set<GridIndex> occupied;
    for (const Gene& g : out.genes) occupied.insert(g.cell);

    for (Gene& g : out.genes) {
        if (unif01(rng) >= mutation_rate) continue;
        std::vector<GridIndex> frees;
        for (GridIndex nb : grid.moore_neighbors(g.cell))
            if (!occupied.count(nb)) frees.push_back(nb);
        if (frees.empty()) continue;  // boxed in: gene stays put
        const GridIndex next =
            frees[std::uniform_int_distribution<std::size_t>(0, frees.size() - 1)(rng)];
        occupied.erase(g.cell);
        occupied.insert(next);
        g.cell = next;
    }
    return out;
}

std::vector<double> mutate_beam(const std::vector<double>& beams, double mutation_rate,
                                std::mt19937_64& rng) {
    std::vector<double> out = beams;
    for (double& b : out) {
        if (unif01(rng) >= mutation_rate) continue;
        const double dev = std::uniform_real_distribution<double>(-kBeamMutationRangeDeg,
                                                                  kBeamMutationRangeDeg)(rng);
        b = normalize_deg(b + dev);
    }
    return out;
}

Chromosome mutate_beam(const Chromosome& chromosome, double mutation_rate, std::mt19937_64& rng) {
    Chromosome out = chromosome;
    for (Gene& g : out.genes) {
        if (unif01(rng) >= mutation_rate) continue;
        const double dev = std::uniform_real_distribution<double>(-kBeamMutationRangeDeg,
                                                                  kBeamMutationRangeDeg)(rng);
        g.beam_deg = normalize_deg(g.beam_deg + dev);
    }
    return out;
}

BeamGaResult run_beam_ga(std::span<const Position> positions, const FitnessEnv& env,
                         int population_size, int max_generations, double mutation_rate,
                         double crossover_rate, int tournament_size, std::uint64_t seed,
                         std::span<const std::vector<double>> seed_beams,
                         std::optional<double> time_budget_s) {
    const auto t0 = Clock::now();
    const std::size_t n = positions.size();
    if (n < 2) throw std::invalid_argument("beam GA: need at least 2 UAVs");
    if (population_size < 2) throw std::invalid_argument("beam GA: population_size must be >= 2");

    BeamGaResult result;

    const auto evaluate = [&](const std::vector<double>& beams, std::uint64_t eval_seed) {
        ++result.fitness_evaluations;
        if (env.channel.shadowing_sigma_db > 0.0) {
            std::mt19937_64 shadow = rng::make_engine(rng::derive_seed(eval_seed, rng::kInner));
            return evaluate_of(positions, beams, env, &shadow);
        }
        return evaluate_of(positions, beams, env, nullptr);
    };

    // Beams cannot change the OF under an omnidirectional pattern; a single
    // evaluation stands in for the whole search.
    if (env.pattern.is_omni()) {
        std::vector<double> beams =
            seed_beams.empty() ? std::vector<double>(n, 0.0) : seed_beams.front();
        if (beams.size() != n)
            throw std::invalid_argument("beam GA: seed beam vector has wrong length");
        for (double& b : beams) b = normalize_deg(b);
        const double of = evaluate(beams, rng::derive_seed(seed, rng::kEval, 0, 0));
        result.beams = std::move(beams);
        result.best_of = of;
        result.of_history = {of};
        result.avg_history = {of};
        result.generations_run = 0;
        result.elapsed_s = seconds_since(t0);
        result.gen_elapsed_s = {result.elapsed_s};
        return result;
    }

    const std::size_t pop_size = static_cast<std::size_t>(population_size);
    std::vector<std::vector<double>> population(pop_size);
    std::vector<double> fits(pop_size, 0.0);

    std::mt19937_64 init_rng = rng::make_engine(rng::derive_seed(seed, rng::kInit));
    const std::size_t n_seeded = std::min(seed_beams.size(), pop_size);
    for (std::size_t k = 0; k < n_seeded; ++k) {
        if (seed_beams[k].size() != n)
            throw std::invalid_argument("beam GA: seed beam vector has wrong length");
        population[k] = seed_beams[k];
        for (double& b : population[k]) b = normalize_deg(b);
    }
    std::uniform_real_distribution<double> angle(0.0, 360.0);
    for (std::size_t k = n_seeded; k < pop_size; ++k) {
        population[k].resize(n);
        for (double& b : population[k]) b = normalize_deg(angle(init_rng));
    }

    auto gen_start = Clock::now();
    for (std::size_t idx = 0; idx < pop_size; ++idx)
        fits[idx] = evaluate(population[idx], rng::derive_seed(seed, rng::kEval, 0, idx));

    std::size_t best = best_index(fits);
    result.of_history.push_back(fits[best]);
    result.avg_history.push_back(mean(fits));
    result.gen_elapsed_s.push_back(seconds_since(gen_start));

    for (int g = 1; g <= max_generations; ++g) {
        // Budget is checked between generations; the first always runs.
        if (g >= 2 && time_budget_s && seconds_since(t0) >= *time_budget_s) break;
        gen_start = Clock::now();

        std::mt19937_64 breed = rng::make_engine(rng::derive_seed(seed, rng::kBreed, g));
        std::vector<std::vector<double>> next;
        std::vector<double> next_fits;
        next.reserve(pop_size);
        next_fits.reserve(pop_size);
        next.push_back(population[best]);  // elite, fitness carried over
        next_fits.push_back(fits[best]);

        while (next.size() < pop_size) {
            const std::size_t ia = tournament_select(fits, tournament_size, breed);
            const std::size_t ib = tournament_select(fits, tournament_size, breed);
            auto [ca, cb] = unif01(breed) < crossover_rate
                                ? crossover_beams(population[ia], population[ib], breed)
                                : std::make_pair(population[ia], population[ib]);
            ca = mutate_beam(ca, mutation_rate, breed);
            cb = mutate_beam(cb, mutation_rate, breed);
            next.push_back(std::move(ca));
            next_fits.push_back(0.0);
            if (next.size() < pop_size) {
                next.push_back(std::move(cb));
                next_fits.push_back(0.0);
            }
        }

        for (std::size_t idx = 1; idx < pop_size; ++idx)
            next_fits[idx] = evaluate(next[idx], rng::derive_seed(seed, rng::kEval, g, idx));

        population = std::move(next);
        fits = std::move(next_fits);
        best = best_index(fits);
        result.of_history.push_back(fits[best]);
        result.avg_history.push_back(mean(fits));
        result.gen_elapsed_s.push_back(seconds_since(gen_start));
        result.generations_run = g;
    }

    result.beams = population[best];
    result.best_of = fits[best];
    result.elapsed_s = seconds_since(t0);
    return result;
}

GaReport run_outer_ga(const FitnessEnv& env, int n_uav, const GaConfig& config,
                      std::span<const Chromosome> seed_chromosomes) {
    const auto t0 = Clock::now();
    config.validate();
    env.grid.validate();
    env.channel.validate();
    env.weights.validate();
    if (n_uav < 2) throw std::invalid_argument("outer GA: need at least 2 UAVs");
    if (env.grid.point_count() < static_cast<std::size_t>(n_uav))
        throw std::invalid_argument("outer GA: deployment grid has only " +
                                    std::to_string(env.grid.point_count()) + " points for " +
                                    std::to_string(n_uav) + " UAVs");

    const std::uint64_t root = config.rng_seed;
    const std::size_t pop_size = static_cast<std::size_t>(config.population_size);

    GaReport report;
    std::atomic<std::uint64_t> evals{0};

    std::vector<Chromosome> population(pop_size);
    std::vector<double> fits(pop_size, 0.0);

    const std::size_t n_seeded = std::min(seed_chromosomes.size(), pop_size);
    for (std::size_t k = 0; k < n_seeded; ++k) {
        const Chromosome& s = seed_chromosomes[k];
        if (s.genes.size() != static_cast<std::size_t>(n_uav))
            throw std::invalid_argument("outer GA: seed chromosome has wrong gene count");
        validate_chromosome(s, env.grid);
        population[k] = s;
    }

    std::mt19937_64 init_rng = rng::make_engine(rng::derive_seed(root, rng::kInit));
    const std::vector<GridIndex> all_cells = env.grid.all_points();
    for (std::size_t k = n_seeded; k < pop_size; ++k) {
        std::vector<GridIndex> cells = all_cells;
        Chromosome c;
        c.genes.resize(n_uav);
        for (int t = 0; t < n_uav; ++t) {
            std::uniform_int_distribution<std::size_t> pick(t, cells.size() - 1);
            std::swap(cells[t], cells[pick(init_rng)]);
            c.genes[t] = {cells[t], 0.0};
        }
        population[k] = std::move(c);
    }

    // Fitness = best OF of the nested beam GA on the individual's positions.
    // Initial seed chromosomes also inject their own beams into that nested
    // run, so re-optimizing an unchanged deployment never regresses.
    const auto evaluate = [&](int generation, std::size_t idx) {
        Chromosome& chromo = population[idx];
        const std::uint64_t eval_seed = rng::derive_seed(root, rng::kEval,
                                                         static_cast<std::uint64_t>(generation), idx);
        std::vector<Position> positions;
        positions.reserve(chromo.genes.size());
        for (const Gene& g : chromo.genes) positions.push_back(env.grid.point(g.cell));

        std::vector<std::vector<double>> seed_bv;
        if (generation == 0 && idx < n_seeded) {
            std::vector<double> beams;
            for (const Gene& g : chromo.genes) beams.push_back(normalize_deg(g.beam_deg));
            seed_bv.push_back(std::move(beams));
        }
        const BeamGaResult inner = run_beam_ga(
            positions, env, config.inner_population_size, config.inner_max_generations,
            config.mutation_rate, config.crossover_rate, config.tournament_size, eval_seed, seed_bv);
        for (std::size_t k = 0; k < chromo.genes.size(); ++k)
            chromo.genes[k].beam_deg = inner.beams[k];
        evals.fetch_add(inner.fitness_evaluations, std::memory_order_relaxed);
        fits[idx] = inner.best_of;
    };

    auto gen_start = Clock::now();
    parallel_for(pop_size, config.n_threads, [&](std::size_t idx) { evaluate(0, idx); });

    std::size_t best = best_index(fits);
    report.of_history.push_back(fits[best]);
    report.avg_history.push_back(mean(fits));
    report.gen_elapsed_s.push_back(seconds_since(gen_start));

    for (int g = 1; g <= config.max_generations; ++g) {
        if (g >= 2 && config.time_budget_s && seconds_since(t0) >= *config.time_budget_s) break;
        gen_start = Clock::now();

        std::mt19937_64 breed = rng::make_engine(rng::derive_seed(root, rng::kBreed, g));
        std::vector<Chromosome> next;
        std::vector<double> next_fits;
        next.reserve(pop_size);
        next_fits.reserve(pop_size);
        next.push_back(population[best]);  // elite, fitness and beams carried over
        next_fits.push_back(fits[best]);

        while (next.size() < pop_size) {
            const std::size_t ia = tournament_select(fits, config.tournament_size, breed);
            const std::size_t ib = tournament_select(fits, config.tournament_size, breed);
            auto [ca, cb] = unif01(breed) < config.crossover_rate
                                ? crossover_positions(population[ia], population[ib], env.grid, breed)
                                : std::make_pair(population[ia], population[ib]);
            ca = mutate_position(ca, env.grid, config.mutation_rate, breed);
            cb = mutate_position(cb, env.grid, config.mutation_rate, breed);
            next.push_back(std::move(ca));
            next_fits.push_back(0.0);
            if (next.size() < pop_size) {
                next.push_back(std::move(cb));
                next_fits.push_back(0.0);
            }
        }

        population = std::move(next);
        fits = std::move(next_fits);
        parallel_for(pop_size - 1, config.n_threads,
                     [&](std::size_t k) { evaluate(g, k + 1); });

        best = best_index(fits);
        report.of_history.push_back(fits[best]);
        report.avg_history.push_back(mean(fits));
        report.gen_elapsed_s.push_back(seconds_since(gen_start));
        report.generations_run = g;
    }

    report.best_chromosome = population[best];
    report.best_states = decode(population[best], env.grid);
    report.best_of = fits[best];
    report.elapsed_s = seconds_since(t0);
    report.fitness_evaluations = evals.load();
    return report;
}

}  // namespace swarmopt
