#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stockfc/arima.hpp"
#include "stockfc/ffnn.hpp"
#include "stockfc/marketdata.hpp"
#include "stockfc/metaheuristics.hpp"
#include "stockfc/metrics.hpp"

namespace stockfc {

enum class ModelKind { sos, pso, ga, arima };

std::string_view to_string(ModelKind kind);
/// Accepts "sos", "pso", "ga", "arima". Throws std::invalid_argument otherwise.
ModelKind parse_model_kind(std::string_view name);

/// Study defaults: 20 replications, population 30, 1000 iterations, ARIMA(0,0,2).
struct ExperimentConfig {
    ModelKind model = ModelKind::sos;
    std::filesystem::path dataset;
    std::size_t replications = 20;
    std::uint64_t master_seed = 42;
    double train_fraction = 0.8;
    Topology topology;
    SosConfig sos;
    PsoConfig pso;
    GaConfig ga;
    ArimaSpec arima_order{0, 0, 2};
    ArimaFitOptions arima_fit;
    std::filesystem::path output_dir = "results";
    std::size_t workers = 0; // replication threads; 0 = hardware concurrency

    /// Sets the iteration budget of all three engines.
    void set_iterations(std::size_t iterations);
    /// Sets population/swarm size of all three engines.
    void set_population(std::size_t population);
    void validate() const;
};

struct PredictionRow {
    Date date;
    double actual_open = 0.0;
    double pred_open = 0.0;
    double actual_close = 0.0;
    double pred_close = 0.0;
};

struct TrainingSummary {
    double train_loss = 0.0;          // final fitness (hybrids) or mean channel CSS (ARIMA)
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
    std::vector<double> parameters;   // best genes, or open then close ARIMA coefficients
};

struct RunResult {
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    MetricsReport test;
    std::vector<PredictionRow> predictions;
    TrainingSummary training;
};

struct RunAggregate {
    MetricsReport best;                  // per-metric minimum
    MetricsReport average;               // per-metric mean
    std::optional<MetricsReport> stddev; // sample (n-1) deviation; unset for one run
    std::size_t runs = 0;
};

struct ExperimentOutcome {
    std::vector<RunResult> results;
    RunAggregate aggregate;
};

/// Seed of replication r under a master seed.
std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t replication);

/// One replication against an already built dataset.
RunResult run_replication(const ExperimentConfig& config, const SupervisedDataset& dataset,
                          std::size_t replication);

ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// Per metric independently: minimum, mean, and sample standard deviation.
RunAggregate aggregate(std::span<const RunResult> results);

/// Writes predictions_r<k>.csv per replication, summary.csv and config.json
/// into `output_dir` (created if absent).
void persist(const ExperimentConfig& config, const ExperimentOutcome& outcome,
             const std::filesystem::path& output_dir);

std::string config_to_json(const ExperimentConfig& config, const ExperimentOutcome& outcome);

} // namespace stockfc
