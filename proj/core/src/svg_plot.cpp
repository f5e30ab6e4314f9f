#include "fwopt/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace fwopt {

namespace {

constexpr double kWidth = 820.0, kHeight = 600.0;
constexpr double kLeft = 80.0, kRight = 30.0, kTop = 50.0, kBottom = 60.0;
constexpr double kYFloor = 1e-16;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<PlotSeries>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
    double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
    for (const PlotSeries& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0)) continue;
            const double y = std::max(s.y[i], kYFloor);
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax > 0.0)) {  // nothing plottable
        xmin = 1.0;
        xmax = 10.0;
        ymin = 1e-1;
        ymax = 1.0;
    }
    if (xmin == xmax) xmax = xmin * 10.0;
    if (ymin == ymax) ymax = ymin * 10.0;

    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double y) {
        return kTop + ph - (std::log10(std::max(y, kYFloor)) - ly0) / (ly1 - ly0) * ph;
    };

    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write SVG file: " + path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
       << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << kWidth / 2 << "' y='28' font-family='sans-serif' font-size='17' "
          "text-anchor='middle'>" << title << "</text>\n";

    // frame
    os << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << pw << "' height='" << ph
       << "' fill='none' stroke='black'/>\n";

    // decade ticks and light grid
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        const double x = px(std::pow(10.0, e));
        os << "<line x1='" << x << "' y1='" << kTop << "' x2='" << x << "' y2='" << kTop + ph
           << "' stroke='#dddddd'/>\n";
        os << "<text x='" << x << "' y='" << kTop + ph + 18
           << "' font-family='sans-serif' font-size='12' text-anchor='middle'>1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        const double y = py(std::pow(10.0, e));
        os << "<line x1='" << kLeft << "' y1='" << y << "' x2='" << kLeft + pw << "' y2='" << y
           << "' stroke='#dddddd'/>\n";
        os << "<text x='" << kLeft - 8 << "' y='" << y + 4
           << "' font-family='sans-serif' font-size='12' text-anchor='end'>1e" << e << "</text>\n";
    }
    os << "<text x='" << kLeft + pw / 2 << "' y='" << kHeight - 14
       << "' font-family='sans-serif' font-size='14' text-anchor='middle'>" << x_label << "</text>\n";
    os << "<text x='20' y='" << kTop + ph / 2
       << "' font-family='sans-serif' font-size='14' text-anchor='middle' transform='rotate(-90 20 "
       << kTop + ph / 2 << ")'>" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const PlotSeries& ser = series[s];
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5'";
        if (ser.dashed) os << " stroke-dasharray='6 4'";
        os << " points='";
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            if (!(ser.x[i] > 0.0)) continue;
            os << num(px(ser.x[i])) << ',' << num(py(ser.y[i])) << ' ';
        }
        os << "'/>\n";
        const double ly = kTop + 16 + 16.0 * static_cast<double>(s);
        os << "<line x1='" << kLeft + pw - 150 << "' y1='" << ly << "' x2='" << kLeft + pw - 120
           << "' y2='" << ly << "' stroke='" << color << "' stroke-width='2'";
        if (ser.dashed) os << " stroke-dasharray='6 4'";
        os << "/>\n";
        os << "<text x='" << kLeft + pw - 114 << "' y='" << ly + 4
           << "' font-family='sans-serif' font-size='12'>" << ser.label << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace fwopt
