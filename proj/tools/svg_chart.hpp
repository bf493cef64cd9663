#pragma once

// Minimal static SVG renderer for the sweep and CDF charts. No styling
// ambitions; just axes, series polylines, CI bars, and a legend.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace d2dshare::plot {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> err;  // optional CI half-widths, same length as y
};

inline const char* default_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf"};
    return palette[i % 7];
}

class LineChart {
public:
    LineChart(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(Series s) { series_.push_back(std::move(s)); }

    void render(std::ostream& os) const {
        const double w = 760, h = 520;
        const double ml = 90, mr = 30, mt = 50, mb = 60;
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& s : series_) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                double e = i < s.err.size() ? s.err[i] : 0.0;
                ymin = std::min(ymin, s.y[i] - e);
                ymax = std::max(ymax, s.y[i] + e);
            }
        }
        if (xmin > xmax) { xmin = 0; xmax = 1; }
        if (ymin > ymax) { ymin = 0; ymax = 1; }
        if (xmax == xmin) { xmax = xmin + 1; }
        double ypad = (ymax - ymin) * 0.08 + (ymax == ymin ? 1.0 : 0.0);
        ymin -= ypad;
        ymax += ypad;

        auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
        auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

        os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
           << "' font-family='sans-serif' font-size='13'>\n";
        os << "<rect width='100%' height='100%' fill='white'/>\n";
        os << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title_
           << "</text>\n";

        // axes + ticks
        os << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='" << h - mb
           << "' stroke='black'/>\n";
        os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
           << "' stroke='black'/>\n";
        for (int t = 0; t <= 5; ++t) {
            double xv = xmin + (xmax - xmin) * t / 5.0;
            double yv = ymin + (ymax - ymin) * t / 5.0;
            os << "<line x1='" << px(xv) << "' y1='" << h - mb << "' x2='" << px(xv) << "' y2='"
               << h - mb + 5 << "' stroke='black'/>\n";
            os << "<text x='" << px(xv) << "' y='" << h - mb + 20 << "' text-anchor='middle'>"
               << fmt(xv) << "</text>\n";
            os << "<line x1='" << ml - 5 << "' y1='" << py(yv) << "' x2='" << ml << "' y2='"
               << py(yv) << "' stroke='black'/>\n";
            os << "<text x='" << ml - 8 << "' y='" << py(yv) + 4 << "' text-anchor='end'>"
               << fmt(yv) << "</text>\n";
        }
        os << "<text x='" << (ml + w - mr) / 2 << "' y='" << h - 15
           << "' text-anchor='middle'>" << x_label_ << "</text>\n";
        os << "<text x='20' y='" << (mt + h - mb) / 2 << "' text-anchor='middle' transform='rotate(-90 20 "
           << (mt + h - mb) / 2 << ")'>" << y_label_ << "</text>\n";

        for (std::size_t si = 0; si < series_.size(); ++si) {
            const auto& s = series_[si];
            std::string color = s.color.empty() ? default_color(si) : s.color;
            os << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            os << "'/>\n";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                os << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i])
                   << "' r='3' fill='" << color << "'/>\n";
                if (i < s.err.size() && s.err[i] > 0.0) {
                    os << "<line x1='" << px(s.x[i]) << "' y1='" << py(s.y[i] - s.err[i])
                       << "' x2='" << px(s.x[i]) << "' y2='" << py(s.y[i] + s.err[i])
                       << "' stroke='" << color << "'/>\n";
                }
            }
            double ly = mt + 18.0 * static_cast<double>(si);
            os << "<line x1='" << w - mr - 150 << "' y1='" << ly << "' x2='" << w - mr - 125
               << "' y2='" << ly << "' stroke='" << color << "' stroke-width='2'/>\n";
            os << "<text x='" << w - mr - 120 << "' y='" << ly + 4 << "'>" << s.label
               << "</text>\n";
        }
        os << "</svg>\n";
    }

private:
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return buf;
    }

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace d2dshare::plot
