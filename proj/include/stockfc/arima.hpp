#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stockfc/marketdata.hpp"
#include "stockfc/metrics.hpp"
#include "stockfc/rng.hpp"

namespace stockfc {

struct ArimaSpec {
    std::size_t p = 0; // AR order
    std::size_t d = 0; // differencing degree
    std::size_t q = 0; // MA order

    friend bool operator==(const ArimaSpec&, const ArimaSpec&) = default;
};

std::string to_string(const ArimaSpec& spec);

/// The eleven (p,d,q) triples swept in the original study, in table order.
std::vector<ArimaSpec> default_arima_grid();

struct ArimaModel {
    ArimaSpec spec;
    std::vector<double> ar;        // length p, each in [-1, 1]
    std::vector<double> ma;        // length q, each in [-1, 1]
    double intercept = 0.0;        // on the differenced scale
    double css = 0.0;              // training conditional sum of squares
    std::vector<double> residuals; // training residuals on the differenced scale
};

class ArimaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// First difference applied d times; output length n - d.
std::vector<double> difference(std::span<const double> series, std::size_t d);

/// Inverse of difference(): `initials` are the first d values of the original series.
std::vector<double> integrate(std::span<const double> diffed, std::span<const double> initials);

/// Residual recursion on an already differenced series with pre-sample
/// residuals fixed at zero. Entries before max(p, q) are zero.
std::vector<double> css_residuals(const ArimaModel& model, std::span<const double> diffed);

/// Conditional sum of squares of `series` (original scale; differenced by
/// model.spec.d internally), summed from index max(p, q) onwards.
double css_loss(const ArimaModel& model, std::span<const double> series);

struct ArimaFitOptions {
    std::size_t population = 30;
    std::size_t iterations = 500;
};

/// Minimizes css_loss over (ar, ma, intercept) with symbiotic organisms search.
/// Coefficients are boxed to [-1, 1]; the intercept to the range of the
/// differenced series. The intercept-only model at the series mean is always
/// part of the starting ecosystem.
ArimaModel fit_arima(std::span<const double> series, const ArimaSpec& spec, RngStream& rng,
                     const ArimaFitOptions& options = {});

/// Conditional expectation of the value following `history`, on the original scale.
double forecast_one_step(const ArimaModel& model, std::span<const double> history);

/// One-step forecasts for series[start], ..., series[n-1], each from the
/// actual values before it. No refitting.
std::vector<double> rolling_forecast(const ArimaModel& model, std::span<const double> series,
                                     std::size_t start);

struct RollingEvaluation {
    ArimaModel model;
    std::vector<double> predictions; // one per test observation
    MetricsReport report;
};

/// Fits on the first floor(n * split) values and walks the rest one step ahead.
RollingEvaluation rolling_evaluate(std::span<const double> series, const ArimaSpec& spec,
                                   double split, RngStream& rng,
                                   const ArimaFitOptions& options = {});

struct SweepRow {
    ArimaSpec spec;
    MetricsReport report; // open/close channel average
};

/// Evaluates each spec on both channels of `series` (train-fitted min-max
/// scaling) and averages the channels. Each spec draws from its own seed
/// derived from `seed` and its grid position.
std::vector<SweepRow> grid_sweep(const OhlcSeries& series, const std::vector<ArimaSpec>& grid,
                                 std::uint64_t seed, double split = 0.8,
                                 const ArimaFitOptions& options = {});

/// Index of the lowest-RMSE row; ties go to the earlier row.
std::size_t best_by_rmse(const std::vector<SweepRow>& rows);

/// Parses "p,d,q;p,d,q;..." (whitespace tolerated). Throws std::invalid_argument.
std::vector<ArimaSpec> parse_arima_grid(std::string_view text);
ArimaSpec parse_arima_spec(std::string_view text);

} // namespace stockfc
