// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--cli path/to/stockfc] [--workdir dir]
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stockfc/arima.hpp"
#include "stockfc/ffnn.hpp"
#include "stockfc/harness.hpp"
#include "stockfc/marketdata.hpp"
#include "stockfc/metaheuristics.hpp"
#include "stockfc/metrics.hpp"
#include "support/oracles.hpp"

using namespace stockfc;
namespace fs = std::filesystem;

namespace {

// Tolerances and thresholds, fixed here rather than passed in.
constexpr double kMetricTolerance = 1e-9;
constexpr std::size_t kPowerMeanTrials = 10000;
constexpr std::size_t kSeeds = 50;
constexpr double kSphereTarget = 1e-3;
constexpr std::size_t kSphereRequired = 45;
// Monotonicity over the FFNN objective uses a shorter budget so the whole
// criterion stays inside its two-minute allowance.
constexpr std::size_t kMonotoneFfnnIterations = 200;
constexpr double kSineRmseLimit = 0.10;
constexpr std::size_t kSineRuns = 20;
constexpr std::size_t kSineRequired = 18;
constexpr double kArLow = 0.4, kArHigh = 0.6;
constexpr double kMaTolerance = 0.15;
constexpr std::size_t kGaExpectedEvaluations = 30 + 1000 * 30;

constexpr double kMonotoneBudget = 120.0;
constexpr double kSineBudget = 300.0;
constexpr double kArimaBudget = 60.0;
constexpr double kTableOrderingBudget = 900.0;
constexpr double kReplicationBudget = 60.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Context {
    fs::path cli;
    fs::path workdir;
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int digits = 6)
{
    std::ostringstream ss;
    ss.precision(digits);
    ss << v;
    return ss.str();
}

std::string quoted(const fs::path& p)
{
    return "\"" + p.string() + "\"";
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Objective sphere_objective()
{
    return {5, [](std::span<const double> x) { return testing::sphere(x); }};
}

// 100 supervised pairs from a smooth two-channel signal, already in [0, 1].
std::vector<SamplePair> synthetic_pairs()
{
    std::vector<SamplePair> pairs;
    auto value = [](int t, double phase) { return 0.5 + 0.4 * std::sin(0.21 * t + phase); };
    for (int t = 0; t < 100; ++t) {
        SamplePair p;
        p.input = {value(t, 0.0), value(t, 0.7)};
        p.target = {value(t + 1, 0.0), value(t + 1, 0.7)};
        pairs.push_back(p);
    }
    return pairs;
}

RunTrace run_engine(int engine, const Objective& obj, std::size_t iterations, std::uint64_t seed)
{
    RngStream rng(seed);
    switch (engine) {
    case 0: {
        SosConfig c;
        c.iterations = iterations;
        return sos_run(obj, c, rng);
    }
    case 1: {
        PsoConfig c;
        c.iterations = iterations;
        return pso_run(obj, c, rng);
    }
    default: {
        GaConfig c;
        c.generations = iterations;
        return ga_run(obj, c, rng);
    }
    }
}

constexpr const char* kEngineNames[] = {"sos", "pso", "ga"};

OhlcSeries sine_series()
{
    OhlcSeries s;
    s.symbol = "SINE";
    auto day = std::chrono::sys_days{std::chrono::year{2015} / 1 / 1};
    for (int t = 0; t < 1259; ++t) {
        const double v = 100.0 + 10.0 * std::sin(2.0 * std::numbers::pi * t / 50.0);
        s.records.push_back({Date{day}, v, v});
        day += std::chrono::days{1};
    }
    return s;
}

// ---------------------------------------------------------------------------

Outcome metric_oracles(const Context&)
{
    std::vector<std::string> bad;
    auto expect = [&](const char* what, double got, double want) {
        if (!(std::abs(got - want) <= kMetricTolerance))
            bad.push_back(std::string(what) + "=" + fmt(got, 17));
    };
    const std::vector<double> a{1, 2, 3}, f{2, 2, 2};
    expect("rmse", rmse(a, f), std::sqrt(2.0 / 3.0));
    expect("mse", mse(a, f), 2.0 / 3.0);
    expect("rmse_sym", rmse(f, a), std::sqrt(2.0 / 3.0));
    expect("mape", mape(std::vector<double>{100, 200}, std::vector<double>{110, 180}), 10.0);
    expect("mad", mad(std::vector<double>{1, 2}, std::vector<double>{1.5, 2.5}), 0.5);
    expect("rmse_same", rmse(a, a), 0.0);
    expect("mape_same", mape(a, a), 0.0);
    MetricsReport lo{0.1, 1, 0.1, 0.01, 5}, hi{0.3, 3, 0.3, 0.09, 5};
    expect("channel_rmse", channel_average(lo, hi).rmse, 0.2);
    expect("channel_mse", channel_average(lo, hi).mse, 0.05);
    bool zero_rejected = false;
    try {
        mape(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 1.0});
    } catch (const std::domain_error&) {
        zero_rejected = true;
    }
    if (!zero_rejected)
        bad.push_back("mape accepted a zero actual");
    std::string detail = bad.empty() ? "all examples within 1e-9" : "mismatch:";
    for (const auto& b : bad)
        detail += " " + b;
    return {bad.empty(), detail};
}

Outcome power_mean(const Context&)
{
    RngStream rng(20240611);
    std::size_t violations = 0;
    for (std::size_t trial = 0; trial < kPowerMeanTrials; ++trial) {
        const std::size_t n = 1 + rng.index(100);
        std::vector<double> a(n), f(n);
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = rng.uniform(-10.0, 10.0);
            f[k] = rng.uniform(-10.0, 10.0);
        }
        if (!(rmse(a, f) >= mad(a, f)))
            ++violations;
    }
    return {violations == 0, std::to_string(violations) + " violations in " +
                                 std::to_string(kPowerMeanTrials) + " pairs"};
}

Outcome monotone_history(const Context&)
{
    Stopwatch clock;
    const auto pairs = synthetic_pairs();
    const Objective sphere = sphere_objective();
    const Objective net{kDefaultTopology.encoded_length(),
                        [&](std::span<const double> g) { return fitness(g, pairs); }};
    std::size_t broken = 0;
    std::string first_break;
    for (int engine = 0; engine < 3; ++engine) {
        for (int objective = 0; objective < 2; ++objective) {
            for (std::size_t s = 0; s < kSeeds; ++s) {
                const auto trace = objective == 0 ? run_engine(engine, sphere, 1000, s)
                                                  : run_engine(engine, net, kMonotoneFfnnIterations, s);
                bool ok = !trace.history.empty() && trace.history.front() <= trace.initial_best_fitness;
                for (std::size_t k = 1; k < trace.history.size(); ++k)
                    ok = ok && trace.history[k] <= trace.history[k - 1];
                if (!ok) {
                    ++broken;
                    if (first_break.empty())
                        first_break = std::string(kEngineNames[engine]) + (objective ? "/ffnn" : "/sphere") +
                                      " seed " + std::to_string(s);
                }
            }
        }
    }
    const double elapsed = clock.seconds();
    std::string detail = std::to_string(broken) + " non-monotone histories over 3 engines x 2 objectives x " +
                         std::to_string(kSeeds) + " seeds; " + fmt(elapsed, 3) + " s (budget " +
                         fmt(kMonotoneBudget, 3) + " s)";
    if (!first_break.empty())
        detail += "; first: " + first_break;
    return {broken == 0 && elapsed < kMonotoneBudget, detail};
}

Outcome sphere_convergence(const Context&)
{
    const Objective sphere = sphere_objective();
    bool pass = true;
    std::string detail;
    for (int engine = 0; engine < 3; ++engine) {
        std::size_t hits = 0;
        double worst = 0.0;
        for (std::size_t s = 0; s < kSeeds; ++s) {
            const double f = run_engine(engine, sphere, 1000, s).best_fitness;
            hits += f < kSphereTarget ? 1 : 0;
            worst = std::max(worst, f);
        }
        pass = pass && hits >= kSphereRequired;
        detail += std::string(detail.empty() ? "" : "; ") + kEngineNames[engine] + " " +
                  std::to_string(hits) + "/" + std::to_string(kSeeds) + " (worst " + fmt(worst, 3) + ")";
    }
    return {pass, detail + "; need >= " + std::to_string(kSphereRequired)};
}

Outcome sine_forecast(const Context&)
{
    Stopwatch clock;
    const auto ds = build_dataset(sine_series(), 0.8);
    const Objective obj{kDefaultTopology.encoded_length(),
                        [&](std::span<const double> g) { return fitness(g, ds.train_pairs); }};
    std::size_t hits = 0;
    double worst = 0.0;
    for (std::size_t r = 0; r < kSineRuns; ++r) {
        RngStream rng(replication_seed(42, r));
        const auto trace = sos_run(obj, SosConfig{}, rng);
        // Test RMSE: mean of the open and close channel RMSEs on test pairs.
        const double test_rmse = fitness(trace.best_genes, ds.test_pairs);
        hits += test_rmse <= kSineRmseLimit ? 1 : 0;
        worst = std::max(worst, test_rmse);
    }
    const double elapsed = clock.seconds();
    return {hits >= kSineRequired && elapsed < kSineBudget,
            std::to_string(hits) + "/" + std::to_string(kSineRuns) + " runs with test RMSE <= " +
                fmt(kSineRmseLimit) + " (worst " + fmt(worst, 4) + ", need " +
                std::to_string(kSineRequired) + "); " + fmt(elapsed, 4) + " s (budget " +
                fmt(kSineBudget, 3) + " s)"};
}

Outcome arima_recovery(const Context&)
{
    Stopwatch clock;
    const std::vector<double> phi{0.5};
    const auto ar_series = testing::simulate_arma(1000, phi, {}, 0.0, 0.1, 1001);
    RngStream ar_rng(1);
    const auto ar = fit_arima(ar_series, {1, 0, 0}, ar_rng);

    const std::vector<double> theta{0.4, 0.3};
    const auto ma_series = testing::simulate_arma(2000, {}, theta, 0.0, 0.1, 2002);
    RngStream ma_rng(2);
    const auto ma = fit_arima(ma_series, {0, 0, 2}, ma_rng);

    const bool ar_ok = ar.ar[0] >= kArLow && ar.ar[0] <= kArHigh;
    const bool ma_ok = std::abs(ma.ma[0] - theta[0]) <= kMaTolerance &&
                       std::abs(ma.ma[1] - theta[1]) <= kMaTolerance;
    const double elapsed = clock.seconds();
    return {ar_ok && ma_ok && elapsed < kArimaBudget,
            "AR(1) phi_hat=" + fmt(ar.ar[0], 4) + "; MA(2) theta_hat=(" + fmt(ma.ma[0], 4) + ", " +
                fmt(ma.ma[1], 4) + "); " + fmt(elapsed, 3) + " s"};
}

Outcome table_ordering(const Context&)
{
    Stopwatch clock;
    ExperimentConfig cfg;
    cfg.model = ModelKind::sos;
    cfg.dataset = STOCKFC_SAMPLE_DATA;
    cfg.replications = 20;
    cfg.master_seed = 42;
    const auto sos = run_experiment(cfg);

    const auto parsed = parse_csv_file(cfg.dataset);
    const auto rows = grid_sweep(parsed.series, default_arima_grid(), cfg.master_seed);
    const auto& best = rows[best_by_rmse(rows)];
    const double elapsed = clock.seconds();
    const double sos_avg = sos.aggregate.average.rmse;
    return {sos_avg < best.report.rmse && elapsed < kTableOrderingBudget,
            "SOS-FFNN average test RMSE " + fmt(sos_avg, 6) + " (best run " +
                fmt(sos.aggregate.best.rmse, 6) + ") vs best ARIMA" + to_string(best.spec) + " RMSE " +
                fmt(best.report.rmse, 6) + "; " + fmt(elapsed, 4) + " s"};
}

std::vector<std::pair<std::string, std::string>> tree(const fs::path& root)
{
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file())
            files.emplace_back(fs::relative(e.path(), root).generic_string(), slurp(e.path()));
    }
    std::sort(files.begin(), files.end());
    return files;
}

Outcome determinism(const Context& ctx)
{
    if (ctx.cli.empty() || !fs::exists(ctx.cli))
        return {false, "CLI binary not found (pass --cli)"};
    const fs::path base = ctx.workdir / "determinism";
    fs::remove_all(base);
    fs::create_directories(base);
    std::vector<std::vector<std::pair<std::string, std::string>>> trees;
    std::vector<std::string> stdouts;
    for (const char* name : {"a", "b"}) {
        const fs::path out = base / name;
        const fs::path log = base / (std::string(name) + ".stdout");
        const std::string cmd = quoted(ctx.cli) + " compare --data " + quoted(STOCKFC_SAMPLE_DATA) +
                                " --models sos,pso,ga,arima --seed 42 --reps 3 --out " + quoted(out) +
                                " > " + quoted(log);
        if (std::system(cmd.c_str()) != 0)
            return {false, "compare invocation failed: " + cmd};
        trees.push_back(tree(out));
        stdouts.push_back(slurp(log));
    }
    std::size_t differing = 0;
    if (trees[0].size() == trees[1].size()) {
        for (std::size_t k = 0; k < trees[0].size(); ++k)
            differing += trees[0][k] != trees[1][k] ? 1 : 0;
    }
    const bool pass = trees[0].size() == trees[1].size() && differing == 0 && stdouts[0] == stdouts[1] &&
                      !trees[0].empty();
    return {pass, std::to_string(trees[0].size()) + " vs " + std::to_string(trees[1].size()) +
                      " files, " + std::to_string(differing) + " differing; stdout " +
                      (stdouts[0] == stdouts[1] ? "identical" : "differs")};
}

Outcome budget_structure(const Context& ctx)
{
    const auto ds = build_dataset(parse_csv_file(STOCKFC_SAMPLE_DATA).series, 0.8);
    const Objective obj{kDefaultTopology.encoded_length(),
                        [&](std::span<const double> g) { return fitness(g, ds.train_pairs); }};
    RngStream rng(replication_seed(42, 0));
    GaConfig ga;
    ga.mutation_rate = 1.0 / 34.0;
    const auto trace = ga_run(obj, ga, rng);
    const bool sizes_ok = trace.population_sizes.size() == 1000 &&
                          std::all_of(trace.population_sizes.begin(), trace.population_sizes.end(),
                                      [](std::size_t n) { return n == 30; });
    const bool evals_ok = trace.evaluation_count == kGaExpectedEvaluations;

    std::size_t rows = 0;
    bool sweep_ok = false;
    if (!ctx.cli.empty() && fs::exists(ctx.cli)) {
        const fs::path out = ctx.workdir / "sweep";
        fs::remove_all(out);
        const std::string cmd = quoted(ctx.cli) + " sweep-arima --data " + quoted(STOCKFC_SAMPLE_DATA) +
                                " --seed 42 --out " + quoted(out) + " > " + quoted(ctx.workdir / "sweep.stdout");
        if (std::system(cmd.c_str()) == 0) {
            std::ifstream in(out / "arima_sweep.csv");
            std::string line;
            std::getline(in, line);
            sweep_ok = line == "p,d,q,rmse,mape,mad";
            while (std::getline(in, line))
                rows += line.empty() ? 0 : 1;
        }
    }
    sweep_ok = sweep_ok && rows == 11;
    return {evals_ok && sizes_ok && sweep_ok,
            "GA evaluations " + std::to_string(trace.evaluation_count) + " (expect " +
                std::to_string(kGaExpectedEvaluations) + "); population 30 at all " +
                std::to_string(trace.population_sizes.size()) + " generations: " +
                (sizes_ok ? "yes" : "no") + "; sweep rows " + std::to_string(rows)};
}

Outcome replication_time(const Context&)
{
    const auto ds = build_dataset(parse_csv_file(STOCKFC_SAMPLE_DATA).series, 0.8);
    bool pass = true;
    std::string detail = std::to_string(ds.train_pairs.size()) + " training pairs;";
    for (ModelKind m : {ModelKind::sos, ModelKind::pso, ModelKind::ga}) {
        ExperimentConfig cfg;
        cfg.model = m;
        cfg.dataset = STOCKFC_SAMPLE_DATA;
        Stopwatch clock;
        run_replication(cfg, ds, 0);
        const double s = clock.seconds();
        pass = pass && s < kReplicationBudget;
        detail += " " + std::string(to_string(m)) + " " + fmt(s, 3) + " s";
    }
    return {pass, detail + " (budget " + fmt(kReplicationBudget, 3) + " s each)"};
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome(const Context&)> check;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    Context ctx;
    ctx.workdir = fs::temp_directory_path() / "stockfc_acceptance";
    std::string cli_path, workdir = ctx.workdir.string();
    app.add_option("--only", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
    app.add_option("--cli", cli_path, "Path to the stockfc executable");
    app.add_option("--workdir", workdir, "Scratch directory for CLI outputs");
    CLI11_PARSE(app, argc, argv);
    ctx.cli = cli_path;
    ctx.workdir = workdir;
    fs::create_directories(ctx.workdir);

    const std::vector<Criterion> criteria{
        {1, "metric oracles", metric_oracles},
        {2, "rmse >= mad on random pairs", power_mean},
        {3, "non-increasing best-fitness history", monotone_history},
        {4, "5-D sphere convergence", sphere_convergence},
        {5, "SOS-FFNN on a noiseless sine", sine_forecast},
        {6, "ARIMA coefficient recovery", arima_recovery},
        {7, "SOS-FFNN beats the best ARIMA order on the sample index", table_ordering},
        {8, "compare output is byte-identical across runs", determinism},
        {9, "GA budget, population size and sweep row count", budget_structure},
        {10, "one hybrid replication under 60 s", replication_time},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only)
            continue;
        Outcome o;
        try {
            o = c.check(ctx);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
