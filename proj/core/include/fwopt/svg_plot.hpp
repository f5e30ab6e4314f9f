#pragma once

#include <string>
#include <vector>

namespace fwopt {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

/// Minimal vector plot: polylines on log-log axes with decade ticks and an
/// inline legend. y values are clamped below at 1e-16 to keep the log axis
/// valid; nonpositive x values are dropped.
void write_loglog_svg(const std::string& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace fwopt
