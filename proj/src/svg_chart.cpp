#include "stockfc/svg_chart.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "stockfc/numfmt.hpp"

namespace stockfc {

std::string xml_escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

namespace {

// Round coordinates to 0.01 px.
std::string px(double v)
{
    return format_shortest(std::round(v * 100.0) / 100.0);
}

// Tick step of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target)
{
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double m = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
    return m * mag;
}

} // namespace

std::string render_svg(const LineChart& chart)
{
    const double left = 70, right = 160, top = 50, bottom = 60;
    const double plot_w = chart.width - left - right;
    const double plot_h = chart.height - top - bottom;

    std::size_t n = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : chart.series) {
        n = std::max(n, s.values.size());
        for (double v : s.values) {
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!(lo <= hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const double x_max = n > 1 ? static_cast<double>(n - 1) : 1.0;

    auto sx = [&](double i) { return left + plot_w * i / x_max; };
    auto sy = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << chart.width
        << "\" height=\"" << chart.height << "\" viewBox=\"0 0 " << chart.width << ' '
        << chart.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << chart.width << "\" height=\"" << chart.height
        << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << px(left + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
        << xml_escape(chart.title) << "</text>\n";

    // Grid and y ticks.
    const double ystep = nice_step(hi - lo, 6);
    svg << "  <g class=\"y-ticks\" stroke=\"#dddddd\">\n";
    for (double v = std::ceil(lo / ystep) * ystep; v <= hi + 1e-12; v += ystep) {
        const double y = sy(v);
        svg << "    <line x1=\"" << px(left) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left + plot_w)
            << "\" y2=\"" << px(y) << "\"/>\n";
        svg << "    <text x=\"" << px(left - 6) << "\" y=\"" << px(y + 4)
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"black\">"
            << format_significant(std::abs(v) < ystep * 1e-9 ? 0.0 : v, 4) << "</text>\n";
    }
    svg << "  </g>\n";

    const double xstep = std::max(1.0, nice_step(x_max, 8));
    svg << "  <g class=\"x-ticks\">\n";
    for (double i = 0; i <= x_max + 1e-9; i += xstep) {
        const double x = sx(i);
        svg << "    <line x1=\"" << px(x) << "\" y1=\"" << px(top + plot_h) << "\" x2=\"" << px(x)
            << "\" y2=\"" << px(top + plot_h + 5) << "\" stroke=\"black\"/>\n";
        svg << "    <text x=\"" << px(x) << "\" y=\"" << px(top + plot_h + 18)
            << "\" text-anchor=\"middle\">" << format_shortest(i) << "</text>\n";
    }
    svg << "  </g>\n";

    svg << "  <line x1=\"" << px(left) << "\" y1=\"" << px(top + plot_h) << "\" x2=\"" << px(left + plot_w)
        << "\" y2=\"" << px(top + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left)
        << "\" y2=\"" << px(top + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << px(left + plot_w / 2) << "\" y=\"" << px(chart.height - 15.0)
        << "\" text-anchor=\"middle\">" << xml_escape(chart.x_label) << "</text>\n";
    svg << "  <text x=\"18\" y=\"" << px(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << px(top + plot_h / 2) << ")\">" << xml_escape(chart.y_label) << "</text>\n";

    for (const auto& s : chart.series) {
        svg << "  <polyline class=\"series\" data-label=\"" << xml_escape(s.label)
            << "\" fill=\"none\" stroke=\"" << xml_escape(s.color)
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (i)
                svg << ' ';
            svg << px(sx(static_cast<double>(i))) << ',' << px(sy(s.values[i]));
        }
        svg << "\"/>\n";
    }

    svg << "  <g class=\"legend\">\n";
    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const double y = top + 10 + 20.0 * static_cast<double>(k);
        const double x = left + plot_w + 15;
        svg << "    <line x1=\"" << px(x) << "\" y1=\"" << px(y) << "\" x2=\"" << px(x + 25) << "\" y2=\""
            << px(y) << "\" stroke=\"" << xml_escape(chart.series[k].color) << "\" stroke-width=\"2\"/>\n";
        svg << "    <text x=\"" << px(x + 32) << "\" y=\"" << px(y + 4) << "\">"
            << xml_escape(chart.series[k].label) << "</text>\n";
    }
    svg << "  </g>\n";
    svg << "</svg>\n";
    return svg.str();
}

PredictionColumns read_predictions_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path.string() + ": empty predictions file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "date,actual_open,pred_open,actual_close,pred_close")
        throw std::runtime_error(path.string() + ": unexpected predictions header");

    PredictionColumns cols;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 5)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected 5 fields");
        double v[4];
        for (int k = 0; k < 4; ++k) {
            const auto f = fields[k + 1];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v[k]);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad number");
        }
        cols.dates.emplace_back(fields[0]);
        cols.actual_open.push_back(v[0]);
        cols.pred_open.push_back(v[1]);
        cols.actual_close.push_back(v[2]);
        cols.pred_close.push_back(v[3]);
    }
    if (cols.dates.empty())
        throw std::runtime_error(path.string() + ": no prediction rows");
    return cols;
}

} // namespace stockfc
