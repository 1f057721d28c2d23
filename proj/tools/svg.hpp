#pragma once

#include <string>
#include <utility>
#include <vector>

namespace specdim::cli {

enum class Style { Line, Markers, DashDot };

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    Style style = Style::Line;
};

/// D_b against r/s̄ on a log axis, equal-spacing reference drawn dash-dotted.
/// A non-empty `inset` (ln(r/s̄), ln N) pairs adds a small second panel.
std::string dimension_plot(const std::vector<Series>& series, const std::string& title,
                           const std::vector<std::pair<double, double>>& inset = {});

}  // namespace specdim::cli
