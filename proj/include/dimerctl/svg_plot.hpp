#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dimerctl {

struct PlotSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> x, y;
};

struct PlotSpec {
    std::string title, x_label, y_label;
    std::vector<PlotSeries> series;
    std::optional<double> dashed_hline;  ///< horizontal overlay (e.g. a bound)
    std::string dashed_label;
    int width = 860;
    int height = 520;
};

/// Self-contained static SVG: axes with ticks and labels, one polyline per
/// series, a small legend, and an optional dashed horizontal overlay.
void write_svg_plot(const PlotSpec& spec, const std::filesystem::path& path);

}  // namespace dimerctl
