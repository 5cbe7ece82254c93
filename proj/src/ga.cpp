#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "engine_common.hpp"
#include "stockfc/metaheuristics.hpp"

namespace stockfc {

std::size_t roulette_select(const Population& population, RngStream& rng)
{
    if (population.empty())
        throw std::invalid_argument("roulette_select: empty population");
    std::vector<double> cumulative(population.size());
    double total = 0.0;
    for (std::size_t k = 0; k < population.size(); ++k) {
        const auto& f = population[k].fitness;
        if (!f || !std::isfinite(*f) || *f < 0.0)
            throw std::invalid_argument("roulette_select: fitness must be finite and nonnegative");
        total += 1.0 / (*f + kRouletteEpsilon);
        cumulative[k] = total;
    }
    const double target = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end())
        return population.size() - 1;
    return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<double> uniform_crossover(std::span<const double> parent_a,
                                      std::span<const double> parent_b, double rate,
                                      RngStream& rng)
{
    if (parent_a.size() != parent_b.size())
        throw std::invalid_argument("uniform_crossover: parent lengths differ");
    std::vector<double> child(parent_a.size());
    for (std::size_t d = 0; d < child.size(); ++d)
        child[d] = rng.uniform() < rate ? parent_a[d] : parent_b[d];
    return child;
}

void uniform_mutate(std::span<double> genes, double rate, double low, double high, RngStream& rng)
{
    for (auto& g : genes) {
        if (rng.uniform() < rate)
            g = rng.uniform(low, high);
    }
}

RunTrace ga_run(const Objective& objective, const GaConfig& cfg, RngStream& rng)
{
    detail::require_dimension(objective, "ga");
    const std::size_t dim = objective.dimension;
    const double mutation_rate = cfg.mutation_rate.value_or(1.0 / static_cast<double>(dim));
    if (cfg.population < 1 || cfg.generations < 1)
        throw std::invalid_argument("ga: population and generations must be at least 1");
    if (cfg.elite_count >= cfg.population)
        throw std::invalid_argument("ga: elite count must be below population size");
    if (!(cfg.crossover_rate >= 0.0 && cfg.crossover_rate <= 1.0) ||
        !(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw std::invalid_argument("ga: rates must lie in [0, 1]");
    if (!(cfg.gene_low < cfg.gene_high))
        throw std::invalid_argument("ga: gene_low must be below gene_high");

    detail::CountingEvaluator eval(objective, "ga");
    Population current = random_population(cfg.population, dim, cfg.gene_low, cfg.gene_high, rng);
    for (auto& c : current)
        eval.evaluate(c);

    // Stable ordering by fitness; ties keep their earlier position.
    auto rank = [](Population& pop) {
        std::stable_sort(pop.begin(), pop.end(), [](const Candidate& a, const Candidate& b) {
            return *a.fitness < *b.fitness;
        });
    };

    RunTrace trace;
    trace.initial_best_fitness = *std::min_element(current.begin(), current.end(), [](const Candidate& a, const Candidate& b) {
                                      return *a.fitness < *b.fitness;
                                  })->fitness;
    trace.history.reserve(cfg.generations);
    trace.population_sizes.reserve(cfg.generations);

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        Population sorted = current;
        rank(sorted);
        Population next(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(cfg.elite_count));
        next.reserve(cfg.elite_count + current.size());

        for (std::size_t k = 0; k < current.size(); ++k) {
            const auto& a = current[roulette_select(current, rng)];
            const auto& b = current[roulette_select(current, rng)];
            Candidate child{uniform_crossover(a.genes, b.genes, cfg.crossover_rate, rng), {}};
            uniform_mutate(child.genes, mutation_rate, cfg.gene_low, cfg.gene_high, rng);
            eval.evaluate(child);
            next.push_back(std::move(child));
        }
        // Elite plus a full brood overfills by elite_count; drop the weakest.
        rank(next);
        next.resize(cfg.population);
        current = std::move(next);

        trace.history.push_back(*current.front().fitness);
        trace.population_sizes.push_back(current.size());
    }

    trace.best_genes = current.front().genes;
    trace.best_fitness = *current.front().fitness;
    trace.evaluation_count = eval.count();
    return trace;
}

} // namespace stockfc
