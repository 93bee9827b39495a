#include "grandlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace grandlab {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_log_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                             const std::vector<SvgSeries>& series) {
    const double width = 640, height = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = std::numeric_limits<double>::infinity(), ymax = 0;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (s.y[i] <= 0) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmin < xmax)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymin > 0)) ymin = 1e-6;
    if (ymax <= ymin) ymax = ymin * 10;
    double ly_min = std::floor(std::log10(ymin));
    double ly_max = std::ceil(std::log10(ymax));
    if (ly_max <= ly_min) ly_max = ly_min + 1;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (std::log10(y) - ly_min) / (ly_max - ly_min) * (height - mt - mb);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"16\">" << title
       << "</text>\n";

    // grid and tick labels (decades on y, series x values on x)
    for (int d = static_cast<int>(ly_min); d <= static_cast<int>(ly_max); ++d) {
        double y = py(std::pow(10.0, d));
        os << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << width - mr << "\" y2=\"" << y
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">1e" << d
           << "</text>\n";
    }
    if (!series.empty())
        for (double x : series.front().x) {
            os << "<line x1=\"" << px(x) << "\" y1=\"" << mt << "\" x2=\"" << px(x) << "\" y2=\"" << height - mb
               << "\" stroke=\"#eee\"/>\n";
            os << "<text x=\"" << px(x) << "\" y=\"" << height - mb + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
               << fmt(x) << "</text>\n";
        }
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr << "\" height=\""
       << height - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
       << x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
       << height / 2 << ")\">" << y_label << "</text>\n";

    double legend_y = mt + 14;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (s.y[i] <= 0) continue;
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        os << "\"/>\n";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (s.y[i] <= 0) continue;
            os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << s.color
               << "\"/>\n";
        }
        os << "<line x1=\"" << width - mr - 150 << "\" y1=\"" << legend_y << "\" x2=\"" << width - mr - 126
           << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"" << width - mr - 120 << "\" y=\"" << legend_y + 4 << "\" font-size=\"11\">" << s.label
           << "</text>\n";
        legend_y += 16;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace grandlab
