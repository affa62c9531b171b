#pragma once

#include "streamfuzz/report.hpp"

#include <string>

namespace streamfuzz {

// Self-contained SVG line chart for one metric series (no plotting library,
// byte-deterministic for identical input). Missing values break the line.
std::string svg_line_chart(const MetricSeries& series, const std::string& title,
                           const std::string& y_label);

}  // namespace streamfuzz
