#include "stockfc/metaheuristics.hpp"

#include <stdexcept>

namespace stockfc {

Population random_population(std::size_t size, std::size_t dimension, double low, double high,
                             RngStream& rng)
{
    if (size == 0)
        throw std::invalid_argument("random_population: size must be at least 1");
    if (!(low < high))
        throw std::invalid_argument("random_population: low must be below high");
    Population pop(size);
    for (auto& c : pop) {
        c.genes.resize(dimension);
        for (auto& g : c.genes)
            g = rng.uniform(low, high);
    }
    return pop;
}

bool greedy_replace(Candidate& incumbent, Candidate&& challenger)
{
    if (!incumbent.fitness || !challenger.fitness)
        throw std::logic_error("greedy_replace: both candidates need a fitness");
    if (*challenger.fitness < *incumbent.fitness) {
        incumbent = std::move(challenger);
        return true;
    }
    return false;
}

} // namespace stockfc
