#include "cli_commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "stockfc/arima.hpp"
#include "stockfc/harness.hpp"
#include "stockfc/numfmt.hpp"
#include "stockfc/svg_chart.hpp"

namespace stockfc::cli {

namespace {

// Bad flag values detected after parsing; reported with exit status 2.
class FlagError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& key)
{
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.starts_with(flag + "=");
    });
}

struct HybridOverrides {
    std::size_t iterations = 1000;
    std::size_t population = 30;
    std::optional<double> inertia;
    std::optional<double> vmax;
    std::optional<double> crossover_rate;
    std::optional<double> mutation_rate;
    std::string arima_order;
    std::string sos_draws = "scalar";
    std::size_t threads = 0;
};

void add_engine_flags(CLI::App& cmd, HybridOverrides& o)
{
    cmd.add_option("--iters", o.iterations, "Iterations / generations per engine run")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--pop", o.population, "Population / swarm size")
        ->capture_default_str()
        ->check(CLI::Range(3, 1000000));
    cmd.add_option("--threads", o.threads, "Worker threads for replications (0 = all cores)")
        ->capture_default_str();
}

void add_model_overrides(CLI::App& cmd, HybridOverrides& o)
{
    cmd.add_option("--inertia", o.inertia, "PSO inertia weight (default 0.9)");
    cmd.add_option("--vmax", o.vmax, "PSO maximum velocity (default 0.2)")->check(CLI::PositiveNumber);
    cmd.add_option("--crossover-rate", o.crossover_rate, "GA uniform crossover rate (default 0.5)")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--mutation-rate", o.mutation_rate, "GA per-gene mutation rate (default 1/34)")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--arima-order", o.arima_order, "ARIMA order p,d,q (default 0,0,2)");
    cmd.add_option("--sos-draws", o.sos_draws,
                   "SOS mutualism/commensalism factors: scalar per offspring, or per-dimension")
        ->capture_default_str()
        ->check(CLI::IsMember({"scalar", "per-dimension"}));
}

ExperimentConfig make_config(ModelKind model, const std::string& data, std::size_t reps,
                             std::uint64_t seed, const HybridOverrides& o)
{
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.dataset = data;
    cfg.replications = reps;
    cfg.master_seed = seed;
    cfg.set_iterations(o.iterations);
    cfg.set_population(o.population);
    cfg.workers = o.threads;
    cfg.sos.per_dimension_draws = o.sos_draws == "per-dimension";
    if (o.inertia)
        cfg.pso.inertia = *o.inertia;
    if (o.vmax)
        cfg.pso.v_max = *o.vmax;
    if (o.crossover_rate)
        cfg.ga.crossover_rate = *o.crossover_rate;
    if (o.mutation_rate)
        cfg.ga.mutation_rate = *o.mutation_rate;
    else
        cfg.ga.mutation_rate = 1.0 / static_cast<double>(cfg.topology.encoded_length());
    if (!o.arima_order.empty()) {
        try {
            cfg.arima_order = parse_arima_spec(o.arima_order);
        } catch (const std::invalid_argument& e) {
            throw FlagError(std::string("--arima-order: ") + e.what());
        }
    }
    return cfg;
}

std::string cell(double v)
{
    return format_significant(v, 6);
}

void print_aggregate(std::ostream& out, ModelKind model, const RunAggregate& agg)
{
    out << std::left << std::setw(8) << "model" << std::setw(10) << "statistic" << std::right
        << std::setw(14) << "rmse" << std::setw(14) << "mape" << std::setw(14) << "mad"
        << std::setw(14) << "mse" << '\n';
    auto row = [&](const char* label, const MetricsReport& m) {
        out << std::left << std::setw(8) << to_string(model) << std::setw(10) << label << std::right
            << std::setw(14) << cell(m.rmse) << std::setw(14) << cell(m.mape) << std::setw(14)
            << cell(m.mad) << std::setw(14) << cell(m.mse) << '\n';
    };
    if (agg.runs == 1) {
        row("single", agg.average);
        return;
    }
    row("best", agg.best);
    row("average", agg.average);
    row("std", *agg.stddev);
}

int cmd_run(const std::string& model_name, const std::string& data, std::size_t reps,
            bool reps_given, std::uint64_t seed, const std::string& out_dir,
            const HybridOverrides& o, std::ostream& out)
{
    ModelKind model;
    try {
        model = parse_model_kind(model_name);
    } catch (const std::invalid_argument& e) {
        throw FlagError(std::string("--model: ") + e.what());
    }
    // A single ARIMA fit is the reference row unless replications are requested.
    if (model == ModelKind::arima && !reps_given)
        reps = 1;
    auto cfg = make_config(model, data, reps, seed, o);
    cfg.output_dir = out_dir;
    const auto outcome = run_experiment(cfg);
    persist(cfg, outcome, cfg.output_dir);
    print_aggregate(out, model, outcome.aggregate);
    return 0;
}

int cmd_sweep(const std::string& data, const std::string& out_dir, std::uint64_t seed,
              const std::string& grid_text, std::ostream& out)
{
    std::vector<ArimaSpec> grid;
    if (grid_text.empty()) {
        grid = default_arima_grid();
    } else {
        try {
            grid = parse_arima_grid(grid_text);
        } catch (const std::invalid_argument& e) {
            throw FlagError(std::string("--grid: ") + e.what());
        }
    }
    const auto parsed = parse_csv_file(data);
    const auto rows = grid_sweep(parsed.series, grid, seed);

    std::ostringstream csv;
    csv << "p,d,q,rmse,mape,mad\n";
    for (const auto& r : rows) {
        csv << r.spec.p << ',' << r.spec.d << ',' << r.spec.q << ',' << format_shortest(r.report.rmse)
            << ',' << format_shortest(r.report.mape) << ',' << format_shortest(r.report.mad) << '\n';
    }
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / "arima_sweep.csv";
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot write " + path.string());
    file << csv.str();

    const auto& best = rows[best_by_rmse(rows)];
    out << csv.str() << "# best_by_rmse," << best.spec.p << ',' << best.spec.d << ',' << best.spec.q
        << ',' << format_shortest(best.report.rmse) << '\n';
    return 0;
}

std::vector<ModelKind> parse_model_list(const std::string& text)
{
    std::vector<ModelKind> models;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        try {
            const auto kind = parse_model_kind(item);
            if (std::find(models.begin(), models.end(), kind) != models.end())
                throw FlagError("--models: duplicate model '" + item + "'");
            models.push_back(kind);
        } catch (const std::invalid_argument& e) {
            throw FlagError(std::string("--models: ") + e.what());
        }
    }
    if (models.empty())
        throw FlagError("--models: no models given");
    return models;
}

int cmd_compare(const std::string& data, const std::string& model_list, std::size_t reps,
                std::uint64_t seed, const std::string& out_dir, const HybridOverrides& o,
                std::ostream& out)
{
    const auto models = parse_model_list(model_list);
    std::vector<RunAggregate> aggregates;
    for (ModelKind m : models) {
        // Same master seed for every model, so replication r shares seed_r.
        auto cfg = make_config(m, data, m == ModelKind::arima ? 1 : reps, seed, o);
        cfg.output_dir = std::filesystem::path(out_dir) / std::string(to_string(m));
        const auto outcome = run_experiment(cfg);
        persist(cfg, outcome, cfg.output_dir);
        aggregates.push_back(outcome.aggregate);
    }

    using Field = double MetricsReport::*;
    const std::pair<const char*, Field> metrics[] = {
        {"rmse", &MetricsReport::rmse}, {"mape", &MetricsReport::mape}, {"mad", &MetricsReport::mad}};

    std::ostringstream csv;
    csv << "metric,statistic";
    out << std::left << std::setw(8) << "metric" << std::setw(10) << "statistic" << std::right;
    for (ModelKind m : models) {
        csv << ',' << to_string(m);
        out << std::setw(14) << to_string(m);
    }
    csv << '\n';
    out << '\n';
    for (const auto& [name, field] : metrics) {
        for (const char* stat : {"best", "average", "std"}) {
            csv << name << ',' << stat;
            out << std::left << std::setw(8) << name << std::setw(10) << stat << std::right;
            for (const auto& agg : aggregates) {
                const MetricsReport* src = stat[0] == 'b' ? &agg.best
                                         : stat[0] == 'a' ? &agg.average
                                         : (agg.stddev ? &*agg.stddev : nullptr);
                csv << ',' << (src ? format_shortest(src->*field) : std::string());
                out << std::setw(14) << (src ? cell(src->*field) : std::string("-"));
            }
            csv << '\n';
            out << '\n';
        }
    }
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / "comparison.csv";
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot write " + path.string());
    file << csv.str();
    return 0;
}

int cmd_plot(const std::string& pred, const std::string& channel, const std::string& out_file,
             const std::string& title)
{
    const auto cols = read_predictions_csv(pred);
    const bool open = channel == "open";
    LineChart chart;
    chart.title = title.empty() ? "Actual vs predicted " + channel + " price" : title;
    chart.series.push_back({"Actual", kActualColor, open ? cols.actual_open : cols.actual_close});
    chart.series.push_back({"Predicted", kPredictedColor, open ? cols.pred_open : cols.pred_close});
    const auto path = std::filesystem::path(out_file);
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot write " + path.string());
    file << render_svg(chart);
    return 0;
}

std::string one_line(std::string s)
{
    std::replace(s.begin(), s.end(), '\n', ' ');
    return trim(s);
}

} // namespace

std::vector<std::string> expand_config_file(const std::vector<std::string>& args)
{
    std::vector<std::string> rest;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw FlagError("--config requires a file path");
            config_path = args[++i];
        } else if (args[i].starts_with("--config=")) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty())
        return rest;

    std::ifstream in(config_path);
    if (!in)
        throw FlagError("--config: cannot open " + config_path);
    std::vector<std::string> injected;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FlagError("--config: line " + std::to_string(line_no) + " is not key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.starts_with("--"))
            key = key.substr(2);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (!has_flag(rest, key)) {
            injected.push_back("--" + key);
            injected.push_back(value);
        }
    }
    // Defaults from the file go right after the subcommand name.
    const std::size_t at = rest.empty() ? 0 : 1;
    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
    return rest;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stock price forecasting with metaheuristic-trained neural networks and ARIMA",
                 "stockfc"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    // run
    std::string model, data, out_dir = "./results";
    std::size_t reps = 20;
    std::uint64_t seed = 42;
    HybridOverrides overrides;
    std::string config_note;
    auto* run = app.add_subcommand("run", "Train and evaluate one model over seeded replications");
    run->add_option("--model", model, "sos | pso | ga | arima")->required();
    run->add_option("--data", data, "Daily price CSV (Date, Open, Close columns)")->required();
    auto* reps_opt = run->add_option("--reps", reps, "Replications (ARIMA defaults to 1)")
                         ->capture_default_str()
                         ->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Master seed")->capture_default_str();
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--config", config_note, "key=value defaults file (flags override it)");
    add_engine_flags(*run, overrides);
    add_model_overrides(*run, overrides);

    // sweep-arima
    std::string grid_text;
    auto* sweep = app.add_subcommand("sweep-arima", "Evaluate a grid of ARIMA orders");
    sweep->add_option("--data", data, "Daily price CSV")->required();
    sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sweep->add_option("--seed", seed, "Master seed")->capture_default_str();
    sweep->add_option("--grid", grid_text, "Orders as \"p,d,q;p,d,q;...\" (default: 11-order grid)");
    sweep->add_option("--config", config_note, "key=value defaults file (flags override it)");

    // compare
    std::string model_list = "sos,pso,ga,arima";
    auto* compare = app.add_subcommand("compare", "Run several models and tabulate best/average/std");
    compare->add_option("--data", data, "Daily price CSV")->required();
    compare->add_option("--models", model_list, "Comma-separated model list")->capture_default_str();
    compare->add_option("--reps", reps, "Replications per hybrid model")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    compare->add_option("--seed", seed, "Master seed")->capture_default_str();
    compare->add_option("--out", out_dir, "Output directory")->capture_default_str();
    compare->add_option("--config", config_note, "key=value defaults file (flags override it)");
    add_engine_flags(*compare, overrides);

    // plot
    std::string pred, channel = "close", svg_out, title;
    auto* plot = app.add_subcommand("plot", "Draw actual vs predicted prices as SVG");
    plot->add_option("--pred", pred, "predictions_r<k>.csv file")->required();
    plot->add_option("--channel", channel, "open | close")
        ->capture_default_str()
        ->check(CLI::IsMember({"open", "close"}));
    plot->add_option("--out", svg_out, "Output SVG path")->required();
    plot->add_option("--title", title, "Chart title");
    plot->add_option("--config", config_note, "key=value defaults file (flags override it)");

    try {
        auto args = expand_config_file(raw_args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "stockfc: " << one_line(e.what()) << " (see 'stockfc " << sub->get_name()
            << " --help' for usage)\n";
        return 2;
    } catch (const FlagError& e) {
        err << "stockfc: " << one_line(e.what()) << '\n';
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(model, data, reps, reps_opt->count() > 0, seed, out_dir, overrides, out);
        if (sweep->parsed())
            return cmd_sweep(data, out_dir, seed, grid_text, out);
        if (compare->parsed())
            return cmd_compare(data, model_list, reps, seed, out_dir, overrides, out);
        if (plot->parsed())
            return cmd_plot(pred, channel, svg_out, title);
    } catch (const FlagError& e) {
        err << "stockfc: " << one_line(e.what()) << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "stockfc: error: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 2;
}

} // namespace stockfc::cli
