#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "cqdyn/analysis.hpp"
#include "cqdyn/csv.hpp"

namespace cqdyn {

// Self-contained SVG line chart: fixed 800x400 viewbox, linear axes, one
// polyline per column, legend from column names. A convenience view of the
// CSV data, not a plotting library.

struct SvgCurve {
    std::string name;
    std::vector<double> values;
};

namespace detail {

inline std::string svg_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
}

inline const char* svg_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

} // namespace detail

inline void write_line_chart_svg(std::ostream& os, const std::vector<double>& x,
                                 const std::vector<SvgCurve>& curves,
                                 const std::string& x_label) {
    constexpr double width = 800.0, height = 400.0;
    constexpr double ml = 60.0, mr = 150.0, mt = 20.0, mb = 45.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double xmin = x.empty() ? 0.0 : x.front();
    double xmax = x.empty() ? 1.0 : x.back();
    if (xmax <= xmin) xmax = xmin + 1.0;
    double ymin = 0.0, ymax = 0.0;
    for (const SvgCurve& c : curves)
        for (double v : c.values) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * plot_w; };
    const auto py = [&](double v) { return mt + (ymax - v) / (ymax - ymin) * plot_h; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 400\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"white\"/>\n";
    os << "<rect x=\"" << detail::svg_coord(ml) << "\" y=\"" << detail::svg_coord(mt)
       << "\" width=\"" << detail::svg_coord(plot_w) << "\" height=\"" << detail::svg_coord(plot_h)
       << "\" fill=\"none\" stroke=\"#333\"/>\n";

    // Axis ticks and labels.
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 4.0;
        const double fy = ymin + (ymax - ymin) * k / 4.0;
        os << "<line x1=\"" << detail::svg_coord(px(fx)) << "\" y1=\""
           << detail::svg_coord(mt + plot_h) << "\" x2=\"" << detail::svg_coord(px(fx))
           << "\" y2=\"" << detail::svg_coord(mt + plot_h + 5.0) << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << detail::svg_coord(px(fx)) << "\" y=\""
           << detail::svg_coord(mt + plot_h + 18.0)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << format_number(fx) << "</text>\n";
        os << "<line x1=\"" << detail::svg_coord(ml - 5.0) << "\" y1=\""
           << detail::svg_coord(py(fy)) << "\" x2=\"" << detail::svg_coord(ml) << "\" y2=\""
           << detail::svg_coord(py(fy)) << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << detail::svg_coord(ml - 8.0) << "\" y=\""
           << detail::svg_coord(py(fy) + 4.0) << "\" font-size=\"11\" text-anchor=\"end\">"
           << format_number(fy) << "</text>\n";
    }
    os << "<text x=\"" << detail::svg_coord(ml + plot_w / 2.0) << "\" y=\""
       << detail::svg_coord(height - 8.0) << "\" font-size=\"12\" text-anchor=\"middle\">"
       << x_label << "</text>\n";

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const SvgCurve& curve = curves[c];
        os << "<polyline fill=\"none\" stroke=\"" << detail::svg_color(c)
           << "\" stroke-width=\"1\" points=\"";
        const std::size_t n = std::min(x.size(), curve.values.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (i) os << ' ';
            os << detail::svg_coord(px(x[i])) << ',' << detail::svg_coord(py(curve.values[i]));
        }
        os << "\"/>\n";
        // Legend entry.
        const double ly = mt + 14.0 + 16.0 * static_cast<double>(c);
        os << "<line x1=\"" << detail::svg_coord(ml + plot_w + 10.0) << "\" y1=\""
           << detail::svg_coord(ly - 4.0) << "\" x2=\"" << detail::svg_coord(ml + plot_w + 30.0)
           << "\" y2=\"" << detail::svg_coord(ly - 4.0) << "\" stroke=\"" << detail::svg_color(c)
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << detail::svg_coord(ml + plot_w + 35.0) << "\" y=\""
           << detail::svg_coord(ly) << "\" font-size=\"12\">" << curve.name << "</text>\n";
    }
    os << "</svg>\n";
}

inline void write_series_svg(std::ostream& os, const TimeSeries& series) {
    std::vector<double> t;
    t.reserve(series.records.size());
    std::vector<SvgCurve> curves(7);
    const char* names[7] = {"p00", "p01", "p10", "p11", "zeta", "concurrence", "purity"};
    for (int c = 0; c < 7; ++c) curves[static_cast<std::size_t>(c)].name = names[c];
    for (const SeriesRecord& r : series.records) {
        t.push_back(r.t);
        for (int c = 0; c < 4; ++c)
            curves[static_cast<std::size_t>(c)].values.push_back(
                r.populations[static_cast<std::size_t>(c)]);
        curves[4].values.push_back(r.zeta);
        curves[5].values.push_back(r.concurrence);
        curves[6].values.push_back(r.purity);
    }
    write_line_chart_svg(os, t, curves, "scaled time");
}

} // namespace cqdyn
