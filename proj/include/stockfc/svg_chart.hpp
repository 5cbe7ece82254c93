#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace stockfc {

struct ChartSeries {
    std::string label;
    std::string color; // any SVG color, e.g. "#1f77b4"
    std::vector<double> values;
};

struct LineChart {
    std::string title;
    std::string x_label = "Test day";
    std::string y_label = "Normalized price";
    std::vector<ChartSeries> series;
    int width = 900;
    int height = 480;
};

inline constexpr const char* kActualColor = "#1f77b4";
inline constexpr const char* kPredictedColor = "#d62728";

/// Standalone SVG 1.1 document: one polyline per series, x = sample index,
/// with axes, tick labels, title and legend.
std::string render_svg(const LineChart& chart);

/// Escapes &, <, >, " and ' for XML text and attribute content.
std::string xml_escape(std::string_view text);

struct PredictionColumns {
    std::vector<std::string> dates;
    std::vector<double> actual_open, pred_open, actual_close, pred_close;
};

/// Reads a predictions_r<k>.csv file. Throws std::runtime_error when malformed.
PredictionColumns read_predictions_csv(const std::filesystem::path& path);

} // namespace stockfc
