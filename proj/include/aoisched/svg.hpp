#pragma once

#include <string>
#include <vector>

namespace aoisched {

// Minimal self-contained SVG line plotter: axes, ticks, grid, legend, one
// polyline per series. No external dependencies; enough for the report
// plots the CLI pairs with its CSV outputs.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false; // plot against log10(x); ticks label the raw values
    int width = 720;
    int height = 440;
};

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);

} // namespace aoisched
