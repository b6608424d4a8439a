#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "randnet/io.hpp"

namespace randnet {

struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool line = true;
  bool markers = true;
};

struct SvgAxes {
  std::string x_label;
  std::string y_label;
  std::string title;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 440;
};

namespace detail {

inline double axis_coord(double v, bool log_scale) {
  if (!log_scale) return v;
  if (v <= 0) throw std::invalid_argument("emit_svg: log axis requires positive values");
  return std::log10(v);
}

}  // namespace detail

/// Standalone SVG scatter/line plot with linear or log10 axes.
/// Deliberately small: one polyline and one circle group per series.
inline std::string render_svg(const std::vector<SvgSeries>& series, const SvgAxes& axes) {
  if (series.empty()) throw std::invalid_argument("emit_svg: need at least one series");
  for (const auto& s : series)
    if (s.points.empty()) throw std::invalid_argument("emit_svg: empty series " + s.name);

  const double ml = 60, mr = 20, mt = 36, mb = 48;
  const double pw = axes.width - ml - mr, ph = axes.height - mt - mb;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      const double u = detail::axis_coord(x, axes.log_x);
      const double v = detail::axis_coord(y, axes.log_y);
      xmin = std::min(xmin, u);
      xmax = std::max(xmax, u);
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  auto px = [&](double x) {
    return ml + (detail::axis_coord(x, axes.log_x) - xmin) / (xmax - xmin) * pw;
  };
  auto py = [&](double y) {
    return mt + ph - (detail::axis_coord(y, axes.log_y) - ymin) / (ymax - ymin) * ph;
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(axes.width) +
         "\" height=\"" + std::to_string(axes.height) + "\" viewBox=\"0 0 " +
         std::to_string(axes.width) + " " + std::to_string(axes.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // frame
  svg += "<rect x=\"" + format_real(ml) + "\" y=\"" + format_real(mt) + "\" width=\"" +
         format_real(pw) + "\" height=\"" + format_real(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!axes.title.empty())
    svg += "<text x=\"" + format_real(ml + pw / 2) +
           "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + axes.title + "</text>\n";
  svg += "<text x=\"" + format_real(ml + pw / 2) + "\" y=\"" +
         format_real(axes.height - 12.0) + "\" text-anchor=\"middle\" font-size=\"12\">" +
         axes.x_label + (axes.log_x ? " (log)" : "") + "</text>\n";
  svg += "<text x=\"16\" y=\"" + format_real(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
         format_real(mt + ph / 2) + ")\">" + axes.y_label + (axes.log_y ? " (log)" : "") +
         "</text>\n";

  int color = 0;
  for (const auto& s : series) {
    const std::string col = palette[color++ % 5];
    if (s.line && s.points.size() > 1) {
      svg += "<polyline fill=\"none\" stroke=\"" + col + "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points)
        svg += format_real(px(x)) + "," + format_real(py(y)) + " ";
      svg += "\"/>\n";
    }
    if (s.markers) {
      for (const auto& [x, y] : s.points)
        svg += "<circle cx=\"" + format_real(px(x)) + "\" cy=\"" + format_real(py(y)) +
               "\" r=\"3\" fill=\"" + col + "\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

inline void emit_svg(const std::vector<SvgSeries>& series, const SvgAxes& axes,
                     const std::filesystem::path& path) {
  write_file_atomic(path, render_svg(series, axes));
}

}  // namespace randnet
