#include <algorithm>
#include <stdexcept>

#include "engine_common.hpp"
#include "stockfc/metaheuristics.hpp"

namespace stockfc {

void pso_move(std::span<double> x, std::span<double> v, std::span<const double> pbest,
              std::span<const double> gbest, std::span<const double> r1,
              std::span<const double> r2, const PsoConfig& cfg)
{
    const std::size_t dim = x.size();
    if (v.size() != dim || pbest.size() != dim || gbest.size() != dim || r1.size() != dim ||
        r2.size() != dim)
        throw std::invalid_argument("pso_move: vector lengths differ");
    for (std::size_t d = 0; d < dim; ++d) {
        double vel = cfg.inertia * v[d] + cfg.c1 * r1[d] * (pbest[d] - x[d]) +
                     cfg.c2 * r2[d] * (gbest[d] - x[d]);
        vel = std::clamp(vel, -cfg.v_max, cfg.v_max);
        v[d] = vel;
        x[d] = std::clamp(x[d] + vel, cfg.min_x, cfg.max_x);
    }
}

RunTrace pso_run(const Objective& objective, const PsoConfig& cfg, RngStream& rng)
{
    detail::require_dimension(objective, "pso");
    if (cfg.swarm < 1 || cfg.iterations < 1)
        throw std::invalid_argument("pso: swarm and iterations must be at least 1");
    if (!(cfg.min_x < cfg.max_x))
        throw std::invalid_argument("pso: min_x must be below max_x");
    if (!(cfg.death_probability >= 0.0 && cfg.death_probability <= 1.0))
        throw std::invalid_argument("pso: death probability must lie in [0, 1]");
    if (!(cfg.v_max > 0.0))
        throw std::invalid_argument("pso: v_max must be positive");

    const std::size_t dim = objective.dimension;
    const std::size_t n = cfg.swarm;
    detail::CountingEvaluator eval(objective, "pso");

    struct Particle {
        std::vector<double> x, v, best_x;
        double best_error = 0.0;
    };
    auto randomize = [&](Particle& p) {
        for (std::size_t d = 0; d < dim; ++d) {
            p.x[d] = rng.uniform(cfg.min_x, cfg.max_x);
            p.v[d] = rng.uniform(-cfg.v_max, cfg.v_max);
        }
    };

    std::vector<Particle> swarm(n);
    for (auto& p : swarm) {
        p.x.resize(dim);
        p.v.resize(dim);
        randomize(p);
        p.best_x = p.x;
        p.best_error = eval(p.x);
    }
    // Global best starts as a random member of the swarm.
    const std::size_t seed_particle = rng.index(n);
    std::vector<double> gbest = swarm[seed_particle].x;
    double gbest_error = swarm[seed_particle].best_error;

    // The guide above need not be the best evaluated particle, so the reported
    // result is tracked separately.
    const Particle& first_best = *std::min_element(swarm.begin(), swarm.end(), [](const Particle& a, const Particle& b) {
        return a.best_error < b.best_error;
    });
    std::vector<double> record = first_best.x;
    double record_error = first_best.best_error;

    RunTrace trace;
    trace.initial_best_fitness = record_error;
    trace.history.reserve(cfg.iterations);
    trace.population_sizes.reserve(cfg.iterations);
    std::vector<double> r1(dim), r2(dim);

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        for (auto& p : swarm) {
            for (std::size_t d = 0; d < dim; ++d)
                r1[d] = rng.uniform();
            for (std::size_t d = 0; d < dim; ++d)
                r2[d] = rng.uniform();
            pso_move(p.x, p.v, p.best_x, gbest, r1, r2, cfg);
            const double error = eval(p.x);
            if (error < p.best_error) {
                p.best_error = error;
                p.best_x = p.x;
            }
            if (error < gbest_error) {
                gbest_error = error;
                gbest = p.x;
            }
            if (error < record_error) {
                record_error = error;
                record = p.x;
            }
            // Death: restart position and velocity, keep the personal best.
            if (rng.bernoulli(cfg.death_probability))
                randomize(p);
        }
        trace.history.push_back(record_error);
        trace.population_sizes.push_back(swarm.size());
    }

    trace.best_genes = std::move(record);
    trace.best_fitness = record_error;
    trace.evaluation_count = eval.count();
    return trace;
}

} // namespace stockfc
