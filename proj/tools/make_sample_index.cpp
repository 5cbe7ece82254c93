// Writes the bundled synthetic daily index sample (data/sample_index.csv).
//
// The close follows a mean-reverting log-price around 3200 points, the open
// gaps from the previous close, and high/low/volume are filled in so the file
// looks like a regular daily export. Fixed seed, so the output never changes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "stockfc/marketdata.hpp"
#include "stockfc/rng.hpp"

namespace {

constexpr std::uint64_t kSeed = 20150102;
constexpr int kRows = 1259;
constexpr double kLevel = 3200.0;
constexpr double kReversion = 0.005;
constexpr double kDailyVol = 0.008;
constexpr double kGapVol = 0.002;

std::string money(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

int main(int argc, char** argv)
{
    const std::string path = argc > 1 ? argv[1] : "data/sample_index.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << '\n';
        return 1;
    }
    stockfc::RngStream rng(kSeed);
    using namespace std::chrono;
    sys_days day = sys_days{year{2015} / January / 2};

    out << "Date,Open,High,Low,Close,Adj Close,Volume\n";
    double log_close = std::log(kLevel);
    double prev_close = kLevel;
    for (int row = 0; row < kRows; ++row) {
        while (weekday{day} == Saturday || weekday{day} == Sunday)
            day += days{1};
        const double open = prev_close * std::exp(kGapVol * rng.normal());
        log_close += kReversion * (std::log(kLevel) - log_close) + kDailyVol * rng.normal();
        const double close = std::exp(log_close);
        const double high = std::max(open, close) * (1.0 + 0.004 * std::abs(rng.normal()));
        const double low = std::min(open, close) * (1.0 - 0.004 * std::abs(rng.normal()));
        const auto volume = static_cast<long long>(2.0e8 * std::exp(0.3 * rng.normal()));

        const auto c = money(close);
        out << stockfc::format_iso_date(year_month_day{day}) << ',' << money(open) << ','
            << money(high) << ',' << money(low) << ',' << c << ',' << c << ',' << volume << '\n';
        prev_close = std::stod(c);
        day += days{1};
    }
    return 0;
}
