#include "stockfc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "stockfc/numfmt.hpp"
#include "stockfc/parallel.hpp"

namespace stockfc {

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::sos: return "sos";
    case ModelKind::pso: return "pso";
    case ModelKind::ga: return "ga";
    case ModelKind::arima: return "arima";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name)
{
    if (name == "sos") return ModelKind::sos;
    if (name == "pso") return ModelKind::pso;
    if (name == "ga") return ModelKind::ga;
    if (name == "arima") return ModelKind::arima;
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

void ExperimentConfig::set_iterations(std::size_t iterations)
{
    sos.iterations = iterations;
    pso.iterations = iterations;
    ga.generations = iterations;
}

void ExperimentConfig::set_population(std::size_t population)
{
    sos.population = population;
    pso.swarm = population;
    ga.population = population;
}

void ExperimentConfig::validate() const
{
    if (replications < 1)
        throw std::invalid_argument("replications must be at least 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie strictly between 0 and 1");
    if (dataset.empty())
        throw std::invalid_argument("no dataset given");
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t replication)
{
    return derive_seed(master_seed, replication);
}

namespace {

MetricsReport score(const std::vector<PredictionRow>& rows)
{
    std::vector<double> ao, po, ac, pc;
    for (const auto& r : rows) {
        ao.push_back(r.actual_open);
        po.push_back(r.pred_open);
        ac.push_back(r.actual_close);
        pc.push_back(r.pred_close);
    }
    return channel_average(evaluate_forecast(ao, po), evaluate_forecast(ac, pc));
}

RunResult run_hybrid(const ExperimentConfig& cfg, const SupervisedDataset& ds, RunResult result)
{
    const Topology topo = cfg.topology;
    Objective objective;
    objective.dimension = topo.encoded_length();
    objective.evaluate = [&](std::span<const double> genes) {
        return fitness(genes, ds.train_pairs, topo);
    };

    RngStream rng(result.seed);
    RunTrace trace;
    switch (cfg.model) {
    case ModelKind::sos: trace = sos_run(objective, cfg.sos, rng); break;
    case ModelKind::pso: trace = pso_run(objective, cfg.pso, rng); break;
    case ModelKind::ga: trace = ga_run(objective, cfg.ga, rng); break;
    case ModelKind::arima: throw std::logic_error("run_hybrid called for ARIMA");
    }

    const Network net = Network::decode(trace.best_genes, topo);
    std::vector<double> hidden(topo.hidden);
    std::array<double, 2> out{};
    result.predictions.reserve(ds.test_pairs.size());
    for (std::size_t k = 0; k < ds.test_pairs.size(); ++k) {
        const auto& pair = ds.test_pairs[k];
        net.forward_into(pair.input, hidden, out);
        result.predictions.push_back(
            {ds.test_target_dates[k], pair.target[0], out[0], pair.target[1], out[1]});
    }
    result.training.train_loss = trace.best_fitness;
    result.training.evaluations = trace.evaluation_count;
    result.training.iterations = trace.history.size();
    result.training.parameters = trace.best_genes;
    return result;
}

RunResult run_arima(const ExperimentConfig& cfg, const SupervisedDataset& ds, RunResult result)
{
    const auto opens = ds.normalized.opens();
    const auto closes = ds.normalized.closes();
    const std::size_t n_train = ds.train_records;
    // Forecast the same target days as the test pairs: every test record but the first.
    const std::size_t start = n_train + 1;

    RngStream open_rng(derive_seed(result.seed, 0));
    RngStream close_rng(derive_seed(result.seed, 1));
    const auto open_model =
        fit_arima(std::span(opens).subspan(0, n_train), cfg.arima_order, open_rng, cfg.arima_fit);
    const auto close_model =
        fit_arima(std::span(closes).subspan(0, n_train), cfg.arima_order, close_rng, cfg.arima_fit);
    const auto pred_open = rolling_forecast(open_model, opens, start);
    const auto pred_close = rolling_forecast(close_model, closes, start);

    for (std::size_t k = 0; k < pred_open.size(); ++k) {
        const std::size_t t = start + k;
        result.predictions.push_back({ds.normalized.records[t].date, opens[t], pred_open[k],
                                      closes[t], pred_close[k]});
    }
    auto& params = result.training.parameters;
    for (const auto* m : {&open_model, &close_model}) {
        params.insert(params.end(), m->ar.begin(), m->ar.end());
        params.insert(params.end(), m->ma.begin(), m->ma.end());
        params.push_back(m->intercept);
    }
    result.training.train_loss = 0.5 * (open_model.css + close_model.css);
    result.training.iterations = cfg.arima_fit.iterations;
    return result;
}

} // namespace

RunResult run_replication(const ExperimentConfig& config, const SupervisedDataset& dataset,
                          std::size_t replication)
{
    RunResult result;
    result.replication = replication;
    result.seed = replication_seed(config.master_seed, replication);
    result = config.model == ModelKind::arima ? run_arima(config, dataset, std::move(result))
                                              : run_hybrid(config, dataset, std::move(result));
    result.test = score(result.predictions);
    return result;
}

RunAggregate aggregate(std::span<const RunResult> results)
{
    if (results.empty())
        throw std::invalid_argument("aggregate: no results");
    const double n = static_cast<double>(results.size());
    using Field = double MetricsReport::*;
    constexpr Field fields[] = {&MetricsReport::rmse, &MetricsReport::mape, &MetricsReport::mad,
                                &MetricsReport::mse};

    RunAggregate agg;
    agg.runs = results.size();
    agg.best = results.front().test;
    agg.average = {};
    for (Field f : fields) {
        double sum = 0.0;
        for (const auto& r : results) {
            agg.best.*f = std::min(agg.best.*f, r.test.*f);
            sum += r.test.*f;
        }
        agg.average.*f = sum / n;
    }
    agg.average.n = agg.best.n;
    if (results.size() > 1) {
        MetricsReport sd{};
        for (Field f : fields) {
            double ss = 0.0;
            for (const auto& r : results) {
                const double dev = r.test.*f - agg.average.*f;
                ss += dev * dev;
            }
            sd.*f = std::sqrt(ss / (n - 1.0));
        }
        sd.n = agg.best.n;
        agg.stddev = sd;
    }
    return agg;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const auto parsed = parse_csv_file(config.dataset);
    const auto dataset = build_dataset(parsed.series, config.train_fraction);

    ExperimentOutcome outcome;
    outcome.results.resize(config.replications);
    parallel_for(
        config.replications,
        [&](std::size_t r) { outcome.results[r] = run_replication(config, dataset, r); },
        config.workers);
    outcome.aggregate = aggregate(outcome.results);
    return outcome;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_metric_row(std::ostream& out, const std::string& label, const std::string& seed,
                      const MetricsReport* m)
{
    out << label << ',' << seed;
    for (double v : {m ? m->rmse : 0.0, m ? m->mape : 0.0, m ? m->mad : 0.0, m ? m->mse : 0.0})
        out << ',' << (m ? format_shortest(v) : std::string());
    out << '\n';
}

nlohmann::ordered_json report_json(const MetricsReport& m)
{
    return {{"rmse", m.rmse}, {"mape", m.mape}, {"mad", m.mad}, {"mse", m.mse}, {"n", m.n}};
}

} // namespace

std::string config_to_json(const ExperimentConfig& c, const ExperimentOutcome& outcome)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["model"] = std::string(to_string(c.model));
    j["dataset"] = c.dataset.generic_string();
    j["replications"] = c.replications;
    j["master_seed"] = c.master_seed;
    j["train_fraction"] = c.train_fraction;
    j["topology"] = {{"inputs", c.topology.inputs},
                     {"hidden", c.topology.hidden},
                     {"outputs", c.topology.outputs}};
    switch (c.model) {
    case ModelKind::sos:
        j["engine"] = {{"population", c.sos.population},
                       {"iterations", c.sos.iterations},
                       {"init_low", c.sos.init_low},
                       {"init_high", c.sos.init_high},
                       {"draws", c.sos.per_dimension_draws ? "per-dimension" : "scalar"}};
        break;
    case ModelKind::pso:
        j["engine"] = {{"swarm", c.pso.swarm},
                       {"iterations", c.pso.iterations},
                       {"inertia", c.pso.inertia},
                       {"c1", c.pso.c1},
                       {"c2", c.pso.c2},
                       {"death_probability", c.pso.death_probability},
                       {"min_x", c.pso.min_x},
                       {"max_x", c.pso.max_x},
                       {"v_max", c.pso.v_max}};
        break;
    case ModelKind::ga:
        j["engine"] = {{"population", c.ga.population},
                       {"generations", c.ga.generations},
                       {"crossover_rate", c.ga.crossover_rate},
                       {"mutation_rate", c.ga.mutation_rate.value_or(
                                             1.0 / static_cast<double>(c.topology.encoded_length()))},
                       {"elite_count", c.ga.elite_count},
                       {"gene_low", c.ga.gene_low},
                       {"gene_high", c.ga.gene_high}};
        break;
    case ModelKind::arima:
        j["engine"] = {{"p", c.arima_order.p},
                       {"d", c.arima_order.d},
                       {"q", c.arima_order.q},
                       {"fit_population", c.arima_fit.population},
                       {"fit_iterations", c.arima_fit.iterations}};
        break;
    }
    ordered_json runs = ordered_json::array();
    for (const auto& r : outcome.results) {
        runs.push_back({{"replication", r.replication},
                        {"seed", r.seed},
                        {"train_loss", r.training.train_loss},
                        {"evaluations", r.training.evaluations},
                        {"iterations", r.training.iterations},
                        {"parameters", r.training.parameters},
                        {"test", report_json(r.test)}});
    }
    j["runs"] = std::move(runs);
    return j.dump(2) + "\n";
}

void persist(const ExperimentConfig& config, const ExperimentOutcome& outcome,
             const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

    for (const auto& r : outcome.results) {
        auto out = open_output(dir / ("predictions_r" + std::to_string(r.replication) + ".csv"));
        out << "date,actual_open,pred_open,actual_close,pred_close\n";
        for (const auto& p : r.predictions) {
            out << format_iso_date(p.date) << ',' << format_significant(p.actual_open, 9) << ','
                << format_significant(p.pred_open, 9) << ',' << format_significant(p.actual_close, 9)
                << ',' << format_significant(p.pred_close, 9) << '\n';
        }
    }

    auto summary = open_output(dir / "summary.csv");
    summary << "run,seed,rmse,mape,mad,mse\n";
    for (const auto& r : outcome.results)
        write_metric_row(summary, "r" + std::to_string(r.replication), std::to_string(r.seed), &r.test);
    const auto& agg = outcome.aggregate;
    write_metric_row(summary, "best", "", &agg.best);
    write_metric_row(summary, "average", "", &agg.average);
    write_metric_row(summary, "std", "", agg.stddev ? &*agg.stddev : nullptr);

    auto cfg = open_output(dir / "config.json");
    cfg << config_to_json(config, outcome);
}

} // namespace stockfc
