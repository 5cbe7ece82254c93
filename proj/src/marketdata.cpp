#include "stockfc/marketdata.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>

namespace stockfc {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

std::optional<double> parse_price(std::string_view field)
{
    if (!field.empty() && field.front() == '"' && field.size() >= 2 && field.back() == '"')
        field = field.substr(1, field.size() - 2);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

int parse_digits(std::string_view s)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError("invalid date component '" + std::string(s) + "'");
    return value;
}

} // namespace

Date parse_iso_date(std::string_view text)
{
    text = trim(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw DataError("invalid ISO-8601 date '" + std::string(text) + "'");
    const Date date{std::chrono::year{parse_digits(text.substr(0, 4))},
                    std::chrono::month{static_cast<unsigned>(parse_digits(text.substr(5, 2)))},
                    std::chrono::day{static_cast<unsigned>(parse_digits(text.substr(8, 2)))}};
    if (!date.ok())
        throw DataError("invalid calendar date '" + std::string(text) + "'");
    return date;
}

std::string format_iso_date(const Date& date)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

std::vector<double> OhlcSeries::opens() const
{
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records)
        out.push_back(r.open);
    return out;
}

std::vector<double> OhlcSeries::closes() const
{
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records)
        out.push_back(r.close);
    return out;
}

ParsedSeries parse_csv(std::istream& in, std::string symbol)
{
    std::string line;
    std::optional<std::size_t> date_col, open_col, close_col;
    bool have_header = false;
    while (!have_header && std::getline(in, line)) {
        if (trim(line).empty())
            continue;
        auto header = split_fields(line);
        if (!header.empty() && header.front().starts_with("\xEF\xBB\xBF"))
            header.front().remove_prefix(3);
        for (std::size_t i = 0; i < header.size(); ++i) {
            const auto name = lower(header[i]);
            if (name == "date")
                date_col = i;
            else if (name == "open")
                open_col = i;
            else if (name == "close")
                close_col = i;
        }
        have_header = true;
    }
    if (!have_header)
        throw DataError("empty input: no header row");
    if (!date_col || !open_col || !close_col) {
        std::string missing = !date_col ? "Date" : (!open_col ? "Open" : "Close");
        throw DataError("missing required column: " + missing);
    }
    const std::size_t needed = std::max({*date_col, *open_col, *close_col}) + 1;

    ParsedSeries result;
    result.series.symbol = std::move(symbol);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split_fields(line);
        if (fields.size() < needed) {
            ++result.skipped_rows;
            continue;
        }
        const auto open = parse_price(fields[*open_col]);
        const auto close = parse_price(fields[*close_col]);
        if (!open || !close || *open <= 0.0 || *close <= 0.0) {
            ++result.skipped_rows;
            continue;
        }
        result.series.records.push_back({parse_iso_date(fields[*date_col]), *open, *close});
    }
    if (result.series.records.empty())
        throw DataError("no parseable rows");

    auto& recs = result.series.records;
    std::stable_sort(recs.begin(), recs.end(),
                     [](const OhlcRecord& a, const OhlcRecord& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < recs.size(); ++i) {
        if (!(recs[i - 1].date < recs[i].date))
            throw DataError("duplicate date " + format_iso_date(recs[i].date));
    }
    return result;
}

ParsedSeries parse_csv_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    return parse_csv(in, path.stem().string());
}

std::pair<OhlcSeries, OhlcSeries> split_chronological(const OhlcSeries& series,
                                                      double train_fraction)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie strictly between 0 and 1");
    const std::size_t n = series.size();
    if (n < 3)
        throw DataError("series too short to split (need at least 3 records)");
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction));
    if (n_train == 0 || n_train == n)
        throw DataError("split leaves an empty partition");
    OhlcSeries train{series.symbol, {series.records.begin(), series.records.begin() + n_train}};
    OhlcSeries test{series.symbol, {series.records.begin() + n_train, series.records.end()}};
    return {std::move(train), std::move(test)};
}

ScalingParams fit_scaling(const OhlcSeries& train)
{
    if (train.records.empty())
        throw DataError("cannot fit scaling on an empty series");
    auto [omin, omax] = std::minmax_element(
        train.records.begin(), train.records.end(),
        [](const OhlcRecord& a, const OhlcRecord& b) { return a.open < b.open; });
    auto [cmin, cmax] = std::minmax_element(
        train.records.begin(), train.records.end(),
        [](const OhlcRecord& a, const OhlcRecord& b) { return a.close < b.close; });
    ScalingParams p{omin->open, omax->open, cmin->close, cmax->close};
    if (!(p.max_open > p.min_open))
        throw DataError("constant channel: open");
    if (!(p.max_close > p.min_close))
        throw DataError("constant channel: close");
    return p;
}

double normalize(double value, double channel_min, double channel_max)
{
    if (!(channel_max > channel_min))
        throw std::invalid_argument("normalize: max must exceed min");
    return (value - channel_min) / (channel_max - channel_min);
}

double denormalize(double value, double channel_min, double channel_max)
{
    if (!(channel_max > channel_min))
        throw std::invalid_argument("denormalize: max must exceed min");
    return channel_min + value * (channel_max - channel_min);
}

OhlcSeries normalize_series(const OhlcSeries& series, const ScalingParams& s)
{
    OhlcSeries out{series.symbol, {}};
    out.records.reserve(series.size());
    for (const auto& r : series.records) {
        out.records.push_back({r.date, normalize(r.open, s.min_open, s.max_open),
                               normalize(r.close, s.min_close, s.max_close)});
    }
    return out;
}

std::vector<SamplePair> make_pairs(const OhlcSeries& normalized)
{
    if (normalized.size() < 2)
        throw DataError("need at least two records to form a pair");
    std::vector<SamplePair> pairs;
    pairs.reserve(normalized.size() - 1);
    for (std::size_t t = 0; t + 1 < normalized.size(); ++t) {
        const auto& today = normalized.records[t];
        const auto& next = normalized.records[t + 1];
        pairs.push_back({{today.open, today.close}, {next.open, next.close}});
    }
    return pairs;
}

SupervisedDataset build_dataset(const OhlcSeries& series, double train_fraction)
{
    auto [train, test] = split_chronological(series, train_fraction);
    if (train.size() < 2 || test.size() < 2)
        throw DataError("each partition needs at least two records to form a pair");
    SupervisedDataset ds;
    ds.scaling = fit_scaling(train);
    ds.train_records = train.size();
    ds.normalized = normalize_series(series, ds.scaling);
    const auto train_norm = normalize_series(train, ds.scaling);
    const auto test_norm = normalize_series(test, ds.scaling);
    ds.train_pairs = make_pairs(train_norm);
    ds.test_pairs = make_pairs(test_norm);
    for (std::size_t t = 1; t < test_norm.size(); ++t)
        ds.test_target_dates.push_back(test_norm.records[t].date);
    return ds;
}

} // namespace stockfc
