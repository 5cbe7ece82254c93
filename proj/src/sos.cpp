#include <algorithm>
#include <stdexcept>

#include "engine_common.hpp"
#include "stockfc/metaheuristics.hpp"

namespace stockfc {

std::pair<std::vector<double>, std::vector<double>>
mutualism_offspring(std::span<const double> xi, std::span<const double> xj,
                    std::span<const double> xbest, const MutualismDraw& draw)
{
    if (xi.size() != xj.size() || xi.size() != xbest.size())
        throw std::invalid_argument("mutualism: vector lengths differ");
    std::vector<double> new_i(xi.size());
    std::vector<double> new_j(xj.size());
    for (std::size_t d = 0; d < xi.size(); ++d) {
        const double mutual = 0.5 * (xi[d] + xj[d]);
        new_i[d] = xi[d] + draw.scale_i * (xbest[d] - mutual * draw.benefit_i);
        new_j[d] = xj[d] + draw.scale_j * (xbest[d] - mutual * draw.benefit_j);
    }
    return {std::move(new_i), std::move(new_j)};
}

std::pair<std::vector<double>, std::vector<double>>
mutualism_step(std::span<const double> xi, std::span<const double> xj,
               std::span<const double> xbest, RngStream& rng, bool per_dimension)
{
    MutualismDraw draw;
    draw.benefit_i = 1 + static_cast<int>(rng.index(2));
    draw.benefit_j = 1 + static_cast<int>(rng.index(2));
    if (!per_dimension) {
        draw.scale_i = rng.uniform();
        draw.scale_j = rng.uniform();
        return mutualism_offspring(xi, xj, xbest, draw);
    }
    if (xi.size() != xj.size() || xi.size() != xbest.size())
        throw std::invalid_argument("mutualism: vector lengths differ");
    std::vector<double> new_i(xi.size());
    std::vector<double> new_j(xj.size());
    for (std::size_t d = 0; d < xi.size(); ++d) {
        const double mutual = 0.5 * (xi[d] + xj[d]);
        new_i[d] = xi[d] + rng.uniform() * (xbest[d] - mutual * draw.benefit_i);
        new_j[d] = xj[d] + rng.uniform() * (xbest[d] - mutual * draw.benefit_j);
    }
    return {std::move(new_i), std::move(new_j)};
}

std::vector<double> commensalism_offspring(std::span<const double> xi, std::span<const double> xj,
                                           std::span<const double> xbest, double scale)
{
    if (xi.size() != xj.size() || xi.size() != xbest.size())
        throw std::invalid_argument("commensalism: vector lengths differ");
    std::vector<double> out(xi.size());
    for (std::size_t d = 0; d < xi.size(); ++d)
        out[d] = xi[d] + scale * (xbest[d] - xj[d]);
    return out;
}

std::vector<double> commensalism_step(std::span<const double> xi, std::span<const double> xj,
                                      std::span<const double> xbest, RngStream& rng,
                                      bool per_dimension)
{
    if (!per_dimension)
        return commensalism_offspring(xi, xj, xbest, rng.uniform(-1.0, 1.0));
    if (xi.size() != xj.size() || xi.size() != xbest.size())
        throw std::invalid_argument("commensalism: vector lengths differ");
    std::vector<double> out(xi.size());
    for (std::size_t d = 0; d < xi.size(); ++d)
        out[d] = xi[d] + rng.uniform(-1.0, 1.0) * (xbest[d] - xj[d]);
    return out;
}

std::vector<double> make_parasite(std::span<const double> xi, std::span<const double> low,
                                  std::span<const double> high, RngStream& rng)
{
    if (low.size() != xi.size() || high.size() != xi.size())
        throw std::invalid_argument("make_parasite: bound lengths differ from organism");
    std::vector<bool> mask(xi.size());
    bool any = false;
    while (!any) {
        for (std::size_t d = 0; d < xi.size(); ++d) {
            mask[d] = rng.bernoulli(0.5);
            any = any || mask[d];
        }
    }
    std::vector<double> parasite(xi.begin(), xi.end());
    for (std::size_t d = 0; d < xi.size(); ++d) {
        if (mask[d])
            parasite[d] = rng.uniform(low[d], high[d]);
    }
    return parasite;
}

RunTrace sos_run(const Objective& objective, const SosConfig& config, RngStream& rng)
{
    detail::require_dimension(objective, "sos");
    if (config.population < 3)
        throw std::invalid_argument("sos: population must be at least 3");
    if (config.iterations < 1)
        throw std::invalid_argument("sos: iterations must be at least 1");
    const std::size_t dim = objective.dimension;
    const std::size_t n = config.population;

    std::vector<double> low(dim, config.init_low);
    std::vector<double> high(dim, config.init_high);
    if (!config.box.empty()) {
        if (config.box.low.size() != dim || config.box.high.size() != dim)
            throw std::invalid_argument("sos: box dimension mismatch");
        low = config.box.low;
        high = config.box.high;
    }
    for (std::size_t d = 0; d < dim; ++d) {
        if (!(low[d] < high[d]))
            throw std::invalid_argument("sos: init range is empty");
    }
    if (config.initial_members.size() > n)
        throw std::invalid_argument("sos: more initial members than organisms");

    auto clamp_into_range = [&](std::vector<double>& x) {
        if (!config.clamp)
            return;
        for (std::size_t d = 0; d < dim; ++d)
            x[d] = std::clamp(x[d], low[d], high[d]);
    };

    detail::CountingEvaluator eval(objective, "sos");
    Population eco(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k < config.initial_members.size()) {
            if (config.initial_members[k].size() != dim)
                throw std::invalid_argument("sos: initial member has wrong dimension");
            eco[k].genes = config.initial_members[k];
        } else {
            eco[k].genes.resize(dim);
            for (std::size_t d = 0; d < dim; ++d)
                eco[k].genes[d] = rng.uniform(low[d], high[d]);
        }
        eval.evaluate(eco[k]);
    }

    auto best_index = [&] {
        std::size_t b = 0;
        for (std::size_t k = 1; k < n; ++k) {
            if (*eco[k].fitness < *eco[b].fitness)
                b = k;
        }
        return b;
    };

    RunTrace trace;
    trace.initial_best_fitness = *eco[best_index()].fitness;
    trace.history.reserve(config.iterations);
    trace.population_sizes.reserve(config.iterations);

    for (std::size_t iter = 0; iter < config.iterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> xbest = eco[best_index()].genes;

            // Mutualism: both partners may benefit.
            {
                const std::size_t j = rng.index_except(n, i);
                auto [gi, gj] = mutualism_step(eco[i].genes, eco[j].genes, xbest, rng,
                                           config.per_dimension_draws);
                clamp_into_range(gi);
                clamp_into_range(gj);
                Candidate ci{std::move(gi), {}};
                Candidate cj{std::move(gj), {}};
                eval.evaluate(ci);
                eval.evaluate(cj);
                greedy_replace(eco[i], std::move(ci));
                greedy_replace(eco[j], std::move(cj));
            }
            // Commensalism: X_i may benefit, X_j is unaffected.
            {
                const std::size_t j = rng.index_except(n, i);
                auto g = commensalism_step(eco[i].genes, eco[j].genes, xbest, rng,
                                           config.per_dimension_draws);
                clamp_into_range(g);
                Candidate c{std::move(g), {}};
                eval.evaluate(c);
                greedy_replace(eco[i], std::move(c));
            }
            // Parasitism: a mutated clone of X_i challenges X_j.
            {
                const std::size_t j = rng.index_except(n, i);
                Candidate parasite{make_parasite(eco[i].genes, low, high, rng), {}};
                eval.evaluate(parasite);
                greedy_replace(eco[j], std::move(parasite));
            }
        }
        trace.history.push_back(*eco[best_index()].fitness);
        trace.population_sizes.push_back(eco.size());
    }

    const auto& best = eco[best_index()];
    trace.best_genes = best.genes;
    trace.best_fitness = *best.fitness;
    trace.evaluation_count = eval.count();
    return trace;
}

} // namespace stockfc
