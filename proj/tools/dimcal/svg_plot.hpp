#ifndef DIMCAL_CLI_SVG_PLOT_HPP
#define DIMCAL_CLI_SVG_PLOT_HPP

#include <optional>
#include <string>
#include <vector>

#include "dimcal/matrix.hpp"

namespace dimcal::cli {

struct PlotSeries {
    std::string name;
    std::string color; // CSS color
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line chart; series are drawn in order with point
/// markers and a legend. Deterministic output for identical input.
std::string line_chart(const std::vector<PlotSeries>& series,
                       const std::string& x_label, const std::string& y_label,
                       const std::string& title);

/// 2-D scatter of the first two embedding columns, colored by label when
/// labels are given (fixed palette, cycled), single color otherwise.
std::string scatter_plot(const Matrix& points,
                         const std::optional<Labels>& labels,
                         const std::string& title);

} // namespace dimcal::cli

#endif
