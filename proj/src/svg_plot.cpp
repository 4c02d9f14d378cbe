#include "driftlab/svg_plot.hpp"

#include "driftlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace driftlab {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 20;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_line_plot(const std::vector<PlotSeries>& series,
                             const std::string& x_label, const std::string& y_label,
                             bool log_y) {
    bool has_points = false;
    for (const auto& s : series) has_points |= !s.points.empty();
    if (!has_points) {
        throw NoDataError("render_line_plot: no data to plot");
    }

    bool all_positive = true;
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            all_positive &= y > 0.0;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
        }
    }
    const bool use_log = log_y && all_positive;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            const double t = use_log ? std::log10(y) : y;
            y_min = std::min(y_min, t);
            y_max = std::max(y_max, t);
        }
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto px = [&](double x) {
        return kMarginLeft + plot_w * (x - x_min) / (x_max - x_min);
    };
    const auto py = [&](double y) {
        const double t = use_log ? std::log10(y) : y;
        return kMarginTop + plot_h * (1.0 - (t - y_min) / (y_max - y_min));
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // Axes.
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << (kHeight - kMarginBottom) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << (kHeight - kMarginBottom) << "\" x2=\""
        << (kWidth - kMarginRight) << "\" y2=\"" << (kHeight - kMarginBottom)
        << "\" stroke=\"black\"/>\n";

    // Ticks: five per axis, labeled in data coordinates.
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double xx = px(fx);
        out << "<line x1=\"" << fmt_px(xx) << "\" y1=\"" << (kHeight - kMarginBottom)
            << "\" x2=\"" << fmt_px(xx) << "\" y2=\"" << (kHeight - kMarginBottom + 5)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt_px(xx) << "\" y=\"" << (kHeight - kMarginBottom + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";

        const double fy = y_min + (y_max - y_min) * i / 4.0;
        const double yy = kMarginTop + plot_h * (1.0 - static_cast<double>(i) / 4.0);
        out << "<line x1=\"" << (kMarginLeft - 5) << "\" y1=\"" << fmt_px(yy) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << fmt_px(yy) << "\" stroke=\"black\"/>\n";
        const double label = use_log ? std::pow(10.0, fy) : fy;
        out << "<text x=\"" << (kMarginLeft - 8) << "\" y=\"" << fmt_px(yy + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(label) << "</text>\n";
    }

    out << "<text x=\"" << (kMarginLeft + plot_w / 2) << "\" y=\"" << (kHeight - 10)
        << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"15\" y=\"" << (kMarginTop + plot_h / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << (kMarginTop + plot_h / 2) << ")\">" << y_label
        << (use_log ? " (log scale)" : "") << "</text>\n";

    int color_idx = 0;
    for (const auto& s : series) {
        if (s.points.empty()) continue;
        const char* color = kPalette[color_idx % 8];
        ++color_idx;
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.points) {
            out << fmt_px(px(x)) << "," << fmt_px(py(y)) << " ";
        }
        out << "\"/>\n";
        if (!s.label.empty()) {
            out << "<text x=\"" << (kWidth - kMarginRight - 150) << "\" y=\""
                << (kMarginTop + 16 * color_idx) << "\" font-size=\"12\" fill=\"" << color << "\">"
                << s.label << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

void write_line_plot(const std::string& path, const std::vector<PlotSeries>& series,
                     const std::string& x_label, const std::string& y_label, bool log_y) {
    const std::string svg = render_line_plot(series, x_label, y_label, log_y);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open plot file for writing: " + path);
    }
    out << svg;
}

}  // namespace driftlab
