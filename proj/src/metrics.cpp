#include "stockfc/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace stockfc {

namespace {

void check_lengths(std::span<const double> actual, std::span<const double> forecast)
{
    if (actual.size() != forecast.size())
        throw std::invalid_argument("metric: actual and forecast lengths differ");
    if (actual.empty())
        throw std::invalid_argument("metric: empty input");
}

} // namespace

double mse(std::span<const double> actual, std::span<const double> forecast)
{
    check_lengths(actual, forecast);
    double sum = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        const double e = actual[t] - forecast[t];
        sum += e * e;
    }
    return sum / static_cast<double>(actual.size());
}

double rmse(std::span<const double> actual, std::span<const double> forecast)
{
    return std::sqrt(mse(actual, forecast));
}

double mad(std::span<const double> actual, std::span<const double> forecast)
{
    check_lengths(actual, forecast);
    double sum = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t)
        sum += std::abs(actual[t] - forecast[t]);
    return sum / static_cast<double>(actual.size());
}

double mape(std::span<const double> actual, std::span<const double> forecast)
{
    check_lengths(actual, forecast);
    double sum = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        if (actual[t] == 0.0)
            throw std::domain_error("mape: division by zero (actual value is 0)");
        sum += std::abs((actual[t] - forecast[t]) / actual[t]);
    }
    return 100.0 * sum / static_cast<double>(actual.size());
}

MetricsReport evaluate_forecast(std::span<const double> actual, std::span<const double> forecast)
{
    MetricsReport r;
    r.mse = mse(actual, forecast);
    r.rmse = std::sqrt(r.mse);
    r.mad = mad(actual, forecast);
    r.mape = mape(actual, forecast);
    r.n = actual.size();
    return r;
}

MetricsReport channel_average(const MetricsReport& a, const MetricsReport& b)
{
    MetricsReport r;
    r.rmse = 0.5 * (a.rmse + b.rmse);
    r.mape = 0.5 * (a.mape + b.mape);
    r.mad = 0.5 * (a.mad + b.mad);
    r.mse = 0.5 * (a.mse + b.mse);
    r.n = a.n;
    return r;
}

} // namespace stockfc
