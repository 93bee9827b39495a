#pragma once

#include <string>
#include <vector>

namespace grandlab {

// Minimal log-y line chart used for BLER / average-query curves.
struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;  // positive values; zeros are dropped from the plot
};

std::string render_log_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                             const std::vector<SvgSeries>& series);

}  // namespace grandlab
