#pragma once

#include <string>
#include <utility>
#include <vector>

namespace driftlab {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Deterministic line plot on a fixed 800x600 canvas, written without any
/// plotting dependency. log_y is honoured only when every y value is
/// positive. Throws NoDataError when no series has points.
std::string render_line_plot(const std::vector<PlotSeries>& series,
                             const std::string& x_label, const std::string& y_label,
                             bool log_y);

void write_line_plot(const std::string& path, const std::vector<PlotSeries>& series,
                     const std::string& x_label, const std::string& y_label, bool log_y);

}  // namespace driftlab
