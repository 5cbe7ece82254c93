#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stockfc/rng.hpp"

namespace stockfc {

/// Minimization target. `evaluate` must be deterministic; lower is better.
struct Objective {
    std::size_t dimension = 0;
    std::function<double(std::span<const double>)> evaluate;
};

struct Candidate {
    std::vector<double> genes;
    std::optional<double> fitness;
};

using Population = std::vector<Candidate>;

/// Raised when an objective returns a non-finite value mid-run.
class EngineAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Result of one optimizer run.
struct RunTrace {
    std::vector<double> best_genes;
    double best_fitness = 0.0;
    double initial_best_fitness = 0.0;          // best of the evaluated initial population
    std::vector<double> history;                // best-so-far after each iteration
    std::vector<std::size_t> population_sizes;  // population size after each iteration
    std::size_t evaluation_count = 0;
};

/// Per-dimension box. Empty vectors mean "use the engine's scalar range".
struct Box {
    std::vector<double> low;
    std::vector<double> high;

    bool empty() const { return low.empty(); }
};

/// Genes i.i.d. uniform on [low, high); fitness unset.
Population random_population(std::size_t size, std::size_t dimension, double low, double high,
                             RngStream& rng);

/// Replaces `incumbent` with `challenger` only when the challenger is strictly fitter.
/// Both must carry a fitness.
bool greedy_replace(Candidate& incumbent, Candidate&& challenger);

// ---------------------------------------------------------------------------
// Symbiotic organisms search

struct SosConfig {
    std::size_t population = 30;
    std::size_t iterations = 1000;
    double init_low = 0.0;
    double init_high = 1.0;
    /// Optional per-dimension range for initialization and parasite draws.
    Box box;
    /// Clamp every offspring into the init range (off by default: organisms roam freely).
    bool clamp = false;
    /// Organisms placed into the initial ecosystem before random fill.
    std::vector<std::vector<double>> initial_members;
    /// Draw the mutualism and commensalism factors per dimension instead of once per offspring.
    bool per_dimension_draws = false;
};

struct MutualismDraw {
    int benefit_i = 1; // BF1, 1 or 2
    int benefit_j = 1; // BF2, 1 or 2
    double scale_i = 0.0;
    double scale_j = 0.0;
};

/// X_i + scale_i * (X_best - BF1 * mutual) and the X_j counterpart, with
/// mutual = (X_i + X_j) / 2.
std::pair<std::vector<double>, std::vector<double>>
mutualism_offspring(std::span<const double> xi, std::span<const double> xj,
                    std::span<const double> xbest, const MutualismDraw& draw);

/// Draws BF1, BF2 from {1, 2} and two scalars on [0, 1), then builds the offspring.
/// With `per_dimension` the two scale factors are redrawn for every dimension.
std::pair<std::vector<double>, std::vector<double>>
mutualism_step(std::span<const double> xi, std::span<const double> xj,
               std::span<const double> xbest, RngStream& rng, bool per_dimension = false);

/// X_i + scale * (X_best - X_j).
std::vector<double> commensalism_offspring(std::span<const double> xi, std::span<const double> xj,
                                           std::span<const double> xbest, double scale);

/// As above with scale uniform on [-1, 1), optionally redrawn per dimension.
std::vector<double> commensalism_step(std::span<const double> xi, std::span<const double> xj,
                                      std::span<const double> xbest, RngStream& rng,
                                      bool per_dimension = false);

/// Copy of X_i with a random nonempty subset of dimensions (each included with
/// probability 0.5) redrawn uniformly from [low_d, high_d).
std::vector<double> make_parasite(std::span<const double> xi, std::span<const double> low,
                                  std::span<const double> high, RngStream& rng);

RunTrace sos_run(const Objective& objective, const SosConfig& config, RngStream& rng);

// ---------------------------------------------------------------------------
// Particle swarm optimization (global best)

struct PsoConfig {
    std::size_t swarm = 30;
    std::size_t iterations = 1000;
    double inertia = 0.9;
    double c1 = 2.0;
    double c2 = 2.0;
    double death_probability = 0.01;
    double min_x = -1.0;
    double max_x = 1.0;
    double v_max = 0.2;
};

/// Velocity and position update for one particle with fixed random factors.
/// v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), clamped to [-v_max, v_max];
/// x <- x + v, clamped to [min_x, max_x]. Both vectors are updated in place.
void pso_move(std::span<double> x, std::span<double> v, std::span<const double> pbest,
              std::span<const double> gbest, std::span<const double> r1,
              std::span<const double> r2, const PsoConfig& config);

RunTrace pso_run(const Objective& objective, const PsoConfig& config, RngStream& rng);

// ---------------------------------------------------------------------------
// Genetic algorithm

struct GaConfig {
    std::size_t population = 30;
    std::size_t generations = 1000;
    double crossover_rate = 0.5;
    /// Per-gene mutation probability; unset means 1 / dimension.
    std::optional<double> mutation_rate;
    std::size_t elite_count = 1;
    double gene_low = 0.0;
    double gene_high = 1.0;
};

inline constexpr double kRouletteEpsilon = 1e-9;

/// Fitness-proportional pick under minimization: weight_i = 1 / (fitness_i + 1e-9).
std::size_t roulette_select(const Population& population, RngStream& rng);

/// Each gene comes from parent_a with probability `rate`, otherwise from parent_b.
std::vector<double> uniform_crossover(std::span<const double> parent_a,
                                      std::span<const double> parent_b, double rate,
                                      RngStream& rng);

/// Each gene is replaced by a uniform draw on [low, high) with probability `rate`.
void uniform_mutate(std::span<double> genes, double rate, double low, double high, RngStream& rng);

RunTrace ga_run(const Objective& objective, const GaConfig& config, RngStream& rng);

} // namespace stockfc
