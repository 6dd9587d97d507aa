#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlfe {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool markers = false;
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 600;

/// Axes, ticks (decades on log axes), polylines and a legend in an 800×600 viewport.
void write_svg(std::ostream& os, const PlotSpec& plot);
void write_svg_file(const std::string& path, const PlotSpec& plot);

} // namespace nlfe
