#pragma once

#include <string>
#include <vector>

namespace chaoskit::svg {

/// One polyline on the plot. x and y must have equal length; non-finite samples
/// break the line rather than being drawn.
struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    int width = 820;
    int height = 520;
};

/// Self-contained SVG line plot: axes with tick labels, one colored polyline per
/// series, and a legend. No external resources; suitable for any SVG viewer.
void write_line_plot(const std::vector<LineSeries>& series, const PlotSpec& spec,
                     const std::string& path);

}  // namespace chaoskit::svg
