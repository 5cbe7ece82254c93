#pragma once

#include <cstddef>
#include <span>

namespace stockfc {

/// Accuracy of one forecast run. mape is a percentage and may exceed 100.
struct MetricsReport {
    double rmse = 0.0;
    double mape = 0.0;
    double mad = 0.0;
    double mse = 0.0;
    std::size_t n = 0;
};

// All four require equal, nonzero lengths (std::invalid_argument otherwise).
double rmse(std::span<const double> actual, std::span<const double> forecast);
double mse(std::span<const double> actual, std::span<const double> forecast);
/// Mean absolute forecast error.
double mad(std::span<const double> actual, std::span<const double> forecast);
/// Throws std::domain_error when any actual value is zero.
double mape(std::span<const double> actual, std::span<const double> forecast);

MetricsReport evaluate_forecast(std::span<const double> actual, std::span<const double> forecast);

/// Arithmetic mean of the open and close channel reports, metric by metric.
/// mse is the mean of the channel mses, not the square of the mean rmse.
MetricsReport channel_average(const MetricsReport& open_report, const MetricsReport& close_report);

} // namespace stockfc
