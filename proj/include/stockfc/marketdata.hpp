#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stockfc {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Throws DataError.
Date parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OhlcRecord {
    Date date;
    double open = 0.0;
    double close = 0.0;
};

struct OhlcSeries {
    std::string symbol;
    std::vector<OhlcRecord> records;

    std::size_t size() const { return records.size(); }
    std::vector<double> opens() const;
    std::vector<double> closes() const;
};

struct ParsedSeries {
    OhlcSeries series;
    std::size_t skipped_rows = 0; // rows with a non-numeric or non-positive Open/Close
};

/// Reads a daily price CSV with a header row naming at least Date, Open and
/// Close (case-insensitive, any column order, extra columns ignored).
/// Records come back sorted by date. Rows with unusable prices are skipped and
/// tallied; a missing column, no usable rows, a bad date or a duplicate date
/// is a DataError.
ParsedSeries parse_csv(std::istream& in, std::string symbol = {});
ParsedSeries parse_csv_file(const std::filesystem::path& path);

/// First floor(n * train_fraction) records go to train, the rest to test.
std::pair<OhlcSeries, OhlcSeries> split_chronological(const OhlcSeries& series,
                                                      double train_fraction = 0.8);

struct ScalingParams {
    double min_open = 0.0;
    double max_open = 1.0;
    double min_close = 0.0;
    double max_close = 1.0;
};

/// Per-channel min/max of the training partition. Constant channels are rejected.
ScalingParams fit_scaling(const OhlcSeries& train);

/// Min-max map to the unit interval. Values outside the fitted range are not clamped.
double normalize(double value, double channel_min, double channel_max);
double denormalize(double value, double channel_min, double channel_max);

OhlcSeries normalize_series(const OhlcSeries& series, const ScalingParams& scaling);

struct SamplePair {
    std::array<double, 2> input;  // open_t, close_t
    std::array<double, 2> target; // open_{t+1}, close_{t+1}
};

/// Next-day pairs; result length is n - 1.
std::vector<SamplePair> make_pairs(const OhlcSeries& normalized);

struct SupervisedDataset {
    std::vector<SamplePair> train_pairs;
    std::vector<SamplePair> test_pairs;
    std::vector<Date> test_target_dates; // date of each test pair's target day
    ScalingParams scaling;
    OhlcSeries normalized;         // whole series on the train-fitted scale
    std::size_t train_records = 0; // split point into `normalized`
};

/// split -> fit scaling on train -> normalize -> pair each partition.
/// Both partitions must hold at least two records.
SupervisedDataset build_dataset(const OhlcSeries& series, double train_fraction = 0.8);

} // namespace stockfc
