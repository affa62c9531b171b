#include "streamfuzz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace streamfuzz {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 610.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 360.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"};

std::string num(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string tick(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

}  // namespace

std::string svg_line_chart(const MetricSeries& series, const std::string& title,
                           const std::string& y_label) {
  double lo = 0.0, hi = 1.0;
  bool any = false;
  for (const auto& row : series.values)
    for (const auto& v : row)
      if (v) {
        if (!any) {
          lo = hi = *v;
          any = true;
        } else {
          lo = std::min(lo, *v);
          hi = std::max(hi, *v);
        }
      }
  if (!any) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double x_min = static_cast<double>(series.sizes.empty() ? 0 : series.sizes.front());
  const double x_max = static_cast<double>(series.sizes.empty() ? 1 : series.sizes.back());
  const double x_span = x_max - x_min < 1e-12 ? 1.0 : x_max - x_min;

  auto x_at = [&](double size) { return kLeft + (size - x_min) / x_span * (kRight - kLeft); };
  auto y_at = [&](double v) { return kBottom - (v - lo) / (hi - lo) * (kBottom - kTop); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";

  // axes
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    const double y = y_at(v);
    svg << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick(v)
        << "</text>\n";
  }
  for (long size : series.sizes) {
    const double x = x_at(static_cast<double>(size));
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(kBottom + 4) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << size
        << "</text>\n";
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << num(kBottom + 38)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">chunk size"
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 "
         "18 "
      << (kTop + kBottom) / 2 << ")\">" << y_label << "</text>\n";

  // one polyline per algorithm; missing values break the line into segments
  for (std::size_t ai = 0; ai < series.algorithms.size(); ++ai) {
    const char* color = kColors[ai % 4];
    std::vector<std::string> segment;
    auto flush = [&]() {
      if (segment.size() >= 2) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t p = 0; p < segment.size(); ++p) {
          if (p) svg << ' ';
          svg << segment[p];
        }
        svg << "\"/>\n";
      }
      segment.clear();
    };
    for (std::size_t si = 0; si < series.sizes.size(); ++si) {
      const auto& v = series.values[si][ai];
      if (!v) {
        flush();  // gap
        continue;
      }
      const double x = x_at(static_cast<double>(series.sizes[si]));
      const double y = y_at(*v);
      segment.push_back(num(x) + "," + num(y));
      svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    flush();

    // legend
    const double ly = kTop + 16.0 * static_cast<double>(ai);
    svg << "<line x1=\"" << num(kRight - 120) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(kRight - 96) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(kRight - 90) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series.algorithms[ai]
        << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace streamfuzz
