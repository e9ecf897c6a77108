// svg.hpp — Minimal self-contained SVG line charts: fixed 800x600 viewBox,
// labelled axes, one polyline per series.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lzbloch::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace detail

inline void write_line_chart(const std::string& path, const std::string& title,
                             const std::string& x_label, const std::string& y_label,
                             const std::vector<Series>& series) {
    const double W = 800, H = 600;
    const double ml = 70, mr = 20, mt = 40, mb = 50;

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                x0 = x1 = x;
                y0 = y1 = y;
                first = false;
            }
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
    const double ypad = 0.05 * (y1 - y0);
    y0 -= ypad;
    y1 += ypad;

    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n"
      << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";

    // axes with 6 ticks each
    f << "<line x1=\"" << detail::num(ml) << "\" y1=\"" << detail::num(H - mb) << "\" x2=\""
      << detail::num(W - mr) << "\" y2=\"" << detail::num(H - mb)
      << "\" stroke=\"black\"/>\n";
    f << "<line x1=\"" << detail::num(ml) << "\" y1=\"" << detail::num(mt) << "\" x2=\""
      << detail::num(ml) << "\" y2=\"" << detail::num(H - mb) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x0 + (x1 - x0) * i / 5.0;
        const double yv = y0 + (y1 - y0) * i / 5.0;
        f << "<line x1=\"" << detail::num(px(xv)) << "\" y1=\"" << detail::num(H - mb)
          << "\" x2=\"" << detail::num(px(xv)) << "\" y2=\"" << detail::num(H - mb + 5)
          << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << detail::num(px(xv)) << "\" y=\"" << detail::num(H - mb + 18)
          << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::num(xv) << "</text>\n";
        f << "<line x1=\"" << detail::num(ml - 5) << "\" y1=\"" << detail::num(py(yv))
          << "\" x2=\"" << detail::num(ml) << "\" y2=\"" << detail::num(py(yv))
          << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << detail::num(ml - 8) << "\" y=\"" << detail::num(py(yv) + 4)
          << "\" text-anchor=\"end\" font-size=\"11\">" << detail::num(yv) << "</text>\n";
    }
    f << "<text x=\"" << detail::num((ml + W - mr) / 2) << "\" y=\"" << detail::num(H - 12)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    f << "<text x=\"18\" y=\"" << detail::num((mt + H - mb) / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << detail::num((mt + H - mb) / 2) << ")\">" << y_label << "</text>\n";

    size_t ci = 0;
    for (const auto& s : series) {
        const char* color = detail::kPalette[ci % 6];
        // keep files small: stride long series down to ~4000 points
        const size_t stride = std::max<size_t>(1, s.points.size() / 4000);
        f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
        for (size_t i = 0; i < s.points.size(); i += stride)
            f << detail::num(px(s.points[i].first)) << ',' << detail::num(py(s.points[i].second))
              << ' ';
        if (stride > 1 && (s.points.size() - 1) % stride != 0)
            f << detail::num(px(s.points.back().first)) << ','
              << detail::num(py(s.points.back().second)) << ' ';
        f << "\"/>\n";
        if (series.size() > 1) {
            f << "<text x=\"" << detail::num(W - mr - 10) << "\" y=\""
              << detail::num(mt + 16.0 * static_cast<double>(ci + 1)) << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
              << color << "\">" << s.name << "</text>\n";
        }
        ++ci;
    }
    f << "</svg>\n";
}

}  // namespace lzbloch::svg
