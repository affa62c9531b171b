#include "streamfuzz/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace streamfuzz {

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

namespace {

std::string format_elapsed(double v, bool include_timing) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", include_timing ? v : 0.0);
  return buffer;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("NA");
}

}  // namespace

std::string report_csv_header() {
  return "chunk_index,algo,chunk_size,k,valid_clusters,mae,error_rate,iterations,"
         "elapsed_seconds,objective";
}

std::string report_csv_row(const ChunkReport& r, bool include_timing) {
  std::ostringstream out;
  out << r.chunk_index << ',' << to_string(r.algorithm) << ',' << r.chunk_size << ',' << r.k << ','
      << r.valid_clusters << ',' << format_optional(r.mae) << ',' << format_optional(r.error_rate)
      << ',' << r.iterations << ',' << format_elapsed(r.elapsed_seconds, include_timing) << ','
      << format_double(r.objective);
  return out.str();
}

std::vector<SummaryRow> summarize(const std::vector<ChunkReport>& reports) {
  std::vector<SummaryRow> rows;
  auto find = [&rows](long size, Algorithm algo) -> SummaryRow& {
    for (auto& row : rows)
      if (row.chunk_size == size && row.algorithm == algo) return row;
    rows.push_back(SummaryRow{});
    rows.back().chunk_size = size;
    rows.back().algorithm = algo;
    return rows.back();
  };

  std::map<std::pair<long, Algorithm>, std::pair<double, long>> mae_acc;
  std::map<std::pair<long, Algorithm>, std::pair<double, long>> err_acc;

  for (const auto& r : reports) {
    SummaryRow& row = find(r.chunk_size, r.algorithm);
    ++row.chunks;
    row.total_valid_clusters += r.valid_clusters;
    row.total_iterations += r.iterations;
    row.total_elapsed_seconds += r.elapsed_seconds;
    if (r.mae) {
      auto& acc = mae_acc[{r.chunk_size, r.algorithm}];
      acc.first += *r.mae;
      ++acc.second;
    }
    if (r.error_rate) {
      auto& acc = err_acc[{r.chunk_size, r.algorithm}];
      acc.first += *r.error_rate;
      ++acc.second;
    }
  }

  for (auto& row : rows) {
    row.mean_valid_clusters =
        row.chunks > 0 ? static_cast<double>(row.total_valid_clusters) / row.chunks : 0.0;
    const auto mit = mae_acc.find({row.chunk_size, row.algorithm});
    if (mit != mae_acc.end() && mit->second.second > 0)
      row.mean_mae = mit->second.first / static_cast<double>(mit->second.second);
    const auto eit = err_acc.find({row.chunk_size, row.algorithm});
    if (eit != err_acc.end() && eit->second.second > 0)
      row.mean_error_rate = eit->second.first / static_cast<double>(eit->second.second);
  }
  return rows;
}

std::string summary_csv(const std::vector<SummaryRow>& rows, bool include_timing) {
  std::ostringstream out;
  out << "chunk_size,algo,chunks,total_valid_clusters,mean_valid_clusters,mean_mae,"
         "mean_error_rate,total_iterations,total_elapsed_seconds\n";
  for (const auto& row : rows) {
    out << row.chunk_size << ',' << to_string(row.algorithm) << ',' << row.chunks << ','
        << row.total_valid_clusters << ',' << format_double(row.mean_valid_clusters) << ','
        << format_optional(row.mean_mae) << ',' << format_optional(row.mean_error_rate) << ','
        << row.total_iterations << ',' << format_elapsed(row.total_elapsed_seconds, include_timing)
        << '\n';
  }
  return out.str();
}

MetricSeries series_for(const std::vector<SummaryRow>& rows, const std::string& metric,
                        bool include_timing) {
  MetricSeries series;
  series.name = metric;

  for (const auto& row : rows) {
    if (std::find(series.sizes.begin(), series.sizes.end(), row.chunk_size) == series.sizes.end())
      series.sizes.push_back(row.chunk_size);
    const std::string algo = to_string(row.algorithm);
    if (std::find(series.algorithms.begin(), series.algorithms.end(), algo) ==
        series.algorithms.end())
      series.algorithms.push_back(algo);
  }
  std::sort(series.sizes.begin(), series.sizes.end());
  std::sort(series.algorithms.begin(), series.algorithms.end());  // wfcm before wfcm-ac

  series.values.assign(series.sizes.size(),
                       std::vector<std::optional<double>>(series.algorithms.size()));
  for (const auto& row : rows) {
    const auto si = static_cast<std::size_t>(
        std::find(series.sizes.begin(), series.sizes.end(), row.chunk_size) -
        series.sizes.begin());
    const auto ai = static_cast<std::size_t>(std::find(series.algorithms.begin(),
                                                       series.algorithms.end(),
                                                       to_string(row.algorithm)) -
                                             series.algorithms.begin());
    if (metric == "valid_clusters")
      series.values[si][ai] = row.mean_valid_clusters;
    else if (metric == "mae")
      series.values[si][ai] = row.mean_mae;
    else if (metric == "time")
      series.values[si][ai] = include_timing ? std::optional<double>(row.total_elapsed_seconds)
                                             : std::optional<double>(0.0);
    else
      throw std::invalid_argument("unknown metric: " + metric);
  }
  return series;
}

std::string dat_file(const MetricSeries& series) {
  std::ostringstream out;
  out << "# chunk_size";
  for (const auto& algo : series.algorithms) out << ' ' << algo;
  out << '\n';
  for (std::size_t si = 0; si < series.sizes.size(); ++si) {
    out << series.sizes[si];
    for (std::size_t ai = 0; ai < series.algorithms.size(); ++ai)
      out << ' ' << format_optional(series.values[si][ai]);
    out << '\n';
  }
  return out.str();
}

}  // namespace streamfuzz
