#include "cevi/io/svg.hpp"

#include "cevi/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace cevi::io {

namespace {

constexpr double kWidth = 960;
constexpr double kHeight = 540;
constexpr double kLeft = 80;
constexpr double kRight = 760;
constexpr double kTop = 50;
constexpr double kBottom = 480;

constexpr std::array<std::string_view, 8> kPalette{"#1b1b1b", "#d62728", "#1f77b4", "#2ca02c",
                                                   "#9467bd", "#ff7f0e", "#8c564b", "#7f7f7f"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

struct Series {
    EstimatorSpec<double> spec;
    std::vector<std::pair<double, double>> points;
};

}  // namespace

std::optional<Metric> parse_metric(std::string_view name) {
    if (name == "median_bias") return Metric::median_bias;
    if (name == "mse") return Metric::mse;
    return std::nullopt;
}

std::string_view to_string(Metric metric) {
    return metric == Metric::mse ? "mse" : "median_bias";
}

std::string render_svg(const StudyResult& result, Metric metric) {
    std::vector<Series> series;
    for (const auto& c : result.cells) {
        const double y = metric == Metric::mse ? c.mse : c.median_bias;
        auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.spec == c.spec; });
        if (it == series.end()) {
            series.push_back({c.spec, {}});
            it = std::prev(series.end());
        }
        if (std::isfinite(y)) it->points.emplace_back(static_cast<double>(c.k), y);
    }
    for (auto& s : series) std::sort(s.points.begin(), s.points.end());

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (metric == Metric::mse) ymin = std::min(ymin, 0.0);
    if (xmax == xmin) xmin -= 1, xmax += 1;
    if (ymax == ymin) ymin -= 1, ymax += 1;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft); };
    auto py = [&](double y) { return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop); };

    std::vector<std::string> labels;
    for (const auto& s : series) {
        std::string label = std::string(cevi::to_string(s.spec.family)) + "/" + std::string(cevi::to_string(s.spec.method));
        const auto same = std::count_if(series.begin(), series.end(), [&](const Series& o) {
            return o.spec.family == s.spec.family && o.spec.method == s.spec.method;
        });
        if (same > 1) label += " (alpha=" + format_real(s.spec.alpha) + ")";
        labels.push_back(label);
    }

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 540\" width=\"960\" height=\"540\" "
           "font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth) + "\" height=\"" + fixed(kHeight) + "\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed((kLeft + kRight) / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
           std::string(to_string(metric)) + " vs k (n=" + std::to_string(result.n) +
           ", reps=" + std::to_string(result.reps) + ", gamma_x=" + format_real(result.gamma_x) +
           ", gamma_c=" + format_real(result.gamma_c) + ")</text>\n";

    // axes and ticks
    out += "<g class=\"axes\" stroke=\"#000\" fill=\"none\">\n";
    out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kBottom) + "\" x2=\"" + fixed(kRight) + "\" y2=\"" +
           fixed(kBottom) + "\"/>\n";
    out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
           fixed(kBottom) + "\"/>\n";
    out += "</g>\n<g class=\"ticks\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        out += "<line x1=\"" + fixed(px(xv)) + "\" y1=\"" + fixed(kBottom) + "\" x2=\"" + fixed(px(xv)) + "\" y2=\"" +
               fixed(kBottom + 5) + "\" stroke=\"#000\"/>\n";
        out += "<text x=\"" + fixed(px(xv)) + "\" y=\"" + fixed(kBottom + 20) + "\" text-anchor=\"middle\">" +
               tick_label(xv) + "</text>\n";
        out += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(py(yv)) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
               fixed(py(yv)) + "\" stroke=\"#000\"/>\n";
        out += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py(yv) + 4) + "\" text-anchor=\"end\">" +
               tick_label(yv) + "</text>\n";
    }
    out += "</g>\n";
    out += "<text x=\"" + fixed((kLeft + kRight) / 2) + "\" y=\"" + fixed(kBottom + 45) +
           "\" text-anchor=\"middle\">k</text>\n";
    if (ymin < 0 && ymax > 0)
        out += "<line class=\"zero\" x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(py(0)) + "\" x2=\"" + fixed(kRight) +
               "\" y2=\"" + fixed(py(0)) + "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto color = std::string(kPalette[i % kPalette.size()]);
        const auto& pts = series[i].points;
        out += "<g class=\"series\" data-label=\"" + labels[i] + "\">\n";
        if (pts.size() >= 2) {
            out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"";
            for (std::size_t j = 0; j < pts.size(); ++j)
                out += (j ? " " : "") + fixed(px(pts[j].first)) + "," + fixed(py(pts[j].second));
            out += "\"/>\n";
        }
        for (const auto& [x, y] : pts)
            out += "<circle cx=\"" + fixed(px(x)) + "\" cy=\"" + fixed(py(y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        out += "</g>\n";
    }

    out += "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 10 + 20.0 * static_cast<double>(i);
        const auto color = std::string(kPalette[i % kPalette.size()]);
        out += "<line x1=\"780\" y1=\"" + fixed(y) + "\" x2=\"810\" y2=\"" + fixed(y) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"818\" y=\"" + fixed(y + 4) + "\">" + labels[i] + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace cevi::io
