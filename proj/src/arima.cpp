#include "stockfc/arima.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "stockfc/metaheuristics.hpp"

namespace stockfc {

std::string to_string(const ArimaSpec& s)
{
    return "(" + std::to_string(s.p) + "," + std::to_string(s.d) + "," + std::to_string(s.q) + ")";
}

std::vector<ArimaSpec> default_arima_grid()
{
    return {{1, 0, 0}, {1, 0, 1}, {2, 0, 0}, {0, 0, 1}, {0, 0, 2}, {1, 1, 0},
            {0, 1, 1}, {1, 1, 2}, {2, 1, 0}, {2, 1, 2}, {2, 1, 1}};
}

std::vector<double> difference(std::span<const double> series, std::size_t d)
{
    std::vector<double> out(series.begin(), series.end());
    if (d == 0)
        return out;
    if (series.size() <= d)
        throw ArimaError("difference: series too short for the differencing degree");
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t t = 0; t + 1 < out.size(); ++t)
            out[t] = out[t + 1] - out[t];
        out.pop_back();
    }
    return out;
}

std::vector<double> integrate(std::span<const double> diffed, std::span<const double> initials)
{
    const std::size_t d = initials.size();
    std::vector<double> current(diffed.begin(), diffed.end());
    for (std::size_t k = d; k-- > 0;) {
        // First value of the k-th difference of the original series.
        const double first = difference(initials.subspan(0, k + 1), k).front();
        std::vector<double> level;
        level.reserve(current.size() + 1);
        level.push_back(first);
        for (double step : current)
            level.push_back(level.back() + step);
        current = std::move(level);
    }
    return current;
}

std::vector<double> css_residuals(const ArimaModel& model, std::span<const double> w)
{
    const std::size_t p = model.spec.p;
    const std::size_t q = model.spec.q;
    const std::size_t start = std::max(p, q);
    std::vector<double> e(w.size(), 0.0);
    for (std::size_t t = start; t < w.size(); ++t) {
        double fitted = model.intercept;
        for (std::size_t i = 1; i <= p; ++i)
            fitted += model.ar[i - 1] * w[t - i];
        for (std::size_t j = 1; j <= q; ++j)
            fitted += model.ma[j - 1] * e[t - j];
        e[t] = w[t] - fitted;
    }
    return e;
}

double css_loss(const ArimaModel& model, std::span<const double> series)
{
    const auto w = difference(series, model.spec.d);
    const auto e = css_residuals(model, w);
    double sum = 0.0;
    for (std::size_t t = std::max(model.spec.p, model.spec.q); t < e.size(); ++t)
        sum += e[t] * e[t];
    return sum;
}

namespace {

ArimaModel unpack(const ArimaSpec& spec, std::span<const double> genes)
{
    ArimaModel m;
    m.spec = spec;
    m.ar.assign(genes.begin(), genes.begin() + static_cast<std::ptrdiff_t>(spec.p));
    m.ma.assign(genes.begin() + static_cast<std::ptrdiff_t>(spec.p),
                genes.begin() + static_cast<std::ptrdiff_t>(spec.p + spec.q));
    m.intercept = genes[spec.p + spec.q];
    return m;
}

} // namespace

ArimaModel fit_arima(std::span<const double> series, const ArimaSpec& spec, RngStream& rng,
                     const ArimaFitOptions& options)
{
    const std::size_t minimum = spec.p + spec.q + spec.d + 2;
    if (series.size() < minimum) {
        throw ArimaError("series too short for ARIMA" + to_string(spec) + ": need at least " +
                         std::to_string(minimum) + " values");
    }
    const auto w = difference(series, spec.d);
    const std::size_t dim = spec.p + spec.q + 1;

    auto [lo_it, hi_it] = std::minmax_element(w.begin(), w.end());
    double c_low = *lo_it;
    double c_high = *hi_it;
    if (!(c_high > c_low)) {
        c_low -= 1.0;
        c_high += 1.0;
    }
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());

    SosConfig cfg;
    cfg.population = options.population;
    cfg.iterations = options.iterations;
    cfg.box.low.assign(dim, -1.0);
    cfg.box.high.assign(dim, 1.0);
    cfg.box.low.back() = c_low;
    cfg.box.high.back() = c_high;
    cfg.clamp = true;
    std::vector<double> baseline(dim, 0.0);
    baseline.back() = mean;
    cfg.initial_members.push_back(std::move(baseline));

    const std::size_t burn_in = std::max(spec.p, spec.q);
    Objective objective;
    objective.dimension = dim;
    objective.evaluate = [&](std::span<const double> genes) {
        const ArimaModel m = unpack(spec, genes);
        const auto e = css_residuals(m, w);
        double sum = 0.0;
        for (std::size_t t = burn_in; t < e.size(); ++t)
            sum += e[t] * e[t];
        // Explosive MA recursions overflow; rank them last instead of aborting.
        return std::isfinite(sum) ? sum : std::numeric_limits<double>::max();
    };

    const RunTrace trace = sos_run(objective, cfg, rng);
    ArimaModel model = unpack(spec, trace.best_genes);
    model.residuals = css_residuals(model, w);
    model.css = trace.best_fitness;
    return model;
}

double forecast_one_step(const ArimaModel& model, std::span<const double> history)
{
    const auto& s = model.spec;
    if (history.size() < s.p + s.d || (s.d > 0 && history.size() <= s.d))
        throw ArimaError("insufficient history for a one-step forecast with ARIMA" + to_string(s));

    // levels[k] holds the k-th difference of the history.
    std::vector<std::vector<double>> levels;
    levels.emplace_back(history.begin(), history.end());
    for (std::size_t k = 0; k < s.d; ++k)
        levels.push_back(difference(levels.back(), 1));
    const auto& w = levels.back();
    const auto e = css_residuals(model, w);
    const std::size_t n = w.size();

    double next = model.intercept;
    for (std::size_t i = 1; i <= s.p; ++i)
        next += model.ar[i - 1] * w[n - i];
    for (std::size_t j = 1; j <= s.q && j <= n; ++j)
        next += model.ma[j - 1] * e[n - j];

    for (std::size_t k = s.d; k-- > 0;)
        next += levels[k].back();
    return next;
}

std::vector<double> rolling_forecast(const ArimaModel& model, std::span<const double> series,
                                     std::size_t start)
{
    if (start > series.size())
        throw ArimaError("rolling_forecast: start beyond the series");
    std::vector<double> out;
    out.reserve(series.size() - start);
    for (std::size_t t = start; t < series.size(); ++t)
        out.push_back(forecast_one_step(model, series.subspan(0, t)));
    return out;
}

RollingEvaluation rolling_evaluate(std::span<const double> series, const ArimaSpec& spec,
                                   double split, RngStream& rng, const ArimaFitOptions& options)
{
    if (!(split > 0.0 && split < 1.0))
        throw std::invalid_argument("rolling_evaluate: split must lie strictly between 0 and 1");
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(series.size()) * split));
    if (n_train == 0 || n_train == series.size())
        throw ArimaError("rolling_evaluate: split leaves an empty partition");
    RollingEvaluation result;
    result.model = fit_arima(series.subspan(0, n_train), spec, rng, options);
    result.predictions = rolling_forecast(result.model, series, n_train);
    result.report = evaluate_forecast(series.subspan(n_train), result.predictions);
    return result;
}

std::vector<SweepRow> grid_sweep(const OhlcSeries& series, const std::vector<ArimaSpec>& grid,
                                 std::uint64_t seed, double split, const ArimaFitOptions& options)
{
    auto [train, test] = split_chronological(series, split);
    const auto scaling = fit_scaling(train);
    const auto normalized = normalize_series(series, scaling);
    const auto opens = normalized.opens();
    const auto closes = normalized.closes();

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const std::uint64_t spec_seed = derive_seed(seed, k);
        RngStream open_rng(derive_seed(spec_seed, 0));
        RngStream close_rng(derive_seed(spec_seed, 1));
        const auto open_eval = rolling_evaluate(opens, grid[k], split, open_rng, options);
        const auto close_eval = rolling_evaluate(closes, grid[k], split, close_rng, options);
        rows.push_back({grid[k], channel_average(open_eval.report, close_eval.report)});
    }
    return rows;
}

std::size_t best_by_rmse(const std::vector<SweepRow>& rows)
{
    if (rows.empty())
        throw std::invalid_argument("best_by_rmse: no rows");
    std::size_t best = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (rows[k].report.rmse < rows[best].report.rmse)
            best = k;
    }
    return best;
}

ArimaSpec parse_arima_spec(std::string_view text)
{
    std::size_t values[3] = {0, 0, 0};
    std::size_t field = 0;
    std::size_t pos = 0;
    while (true) {
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        if (field >= 3)
            throw std::invalid_argument("ARIMA order needs exactly three values: '" + std::string(text) + "'");
        auto [ptr, ec] = std::from_chars(begin, end, values[field]);
        if (ec != std::errc{})
            throw std::invalid_argument("invalid ARIMA order '" + std::string(text) + "'");
        pos = static_cast<std::size_t>(ptr - text.data());
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
        ++field;
        if (pos == text.size())
            break;
        if (text[pos] != ',')
            throw std::invalid_argument("invalid ARIMA order '" + std::string(text) + "'");
        ++pos;
    }
    if (field != 3)
        throw std::invalid_argument("ARIMA order needs exactly three values: '" + std::string(text) + "'");
    return {values[0], values[1], values[2]};
}

std::vector<ArimaSpec> parse_arima_grid(std::string_view text)
{
    std::vector<ArimaSpec> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto semi = text.find(';', start);
        auto item = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
        while (!item.empty() && (item.front() == ' ' || item.front() == '('))
            item.remove_prefix(1);
        while (!item.empty() && (item.back() == ' ' || item.back() == ')'))
            item.remove_suffix(1);
        if (!item.empty())
            grid.push_back(parse_arima_spec(item));
        else if (semi != std::string_view::npos || grid.empty())
            throw std::invalid_argument("empty entry in ARIMA grid '" + std::string(text) + "'");
        if (semi == std::string_view::npos)
            break;
        start = semi + 1;
    }
    return grid;
}

} // namespace stockfc
