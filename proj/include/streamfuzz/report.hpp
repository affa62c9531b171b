#pragma once

#include <optional>
#include <string>
#include <vector>

namespace streamfuzz {

enum class Algorithm { wfcm, wfcm_ac };

inline const char* to_string(Algorithm a) {
  return a == Algorithm::wfcm ? "wfcm" : "wfcm-ac";
}

// One row of reports.csv.
struct ChunkReport {
  long chunk_index = 0;
  Algorithm algorithm = Algorithm::wfcm;
  long chunk_size = 0;  // configured sweep size; engines fill the actual row count
  long k = 0;
  int valid_clusters = 0;
  std::optional<double> mae;         // absent when the chunk carries no labels
  std::optional<double> error_rate;  // 0/1 misclassification companion to mae
  long iterations = 0;
  double elapsed_seconds = 0.0;
  double objective = 0.0;
};

// CSV / .dat / summary serialization lives in src/report.cpp.
std::string report_csv_header();
std::string report_csv_row(const ChunkReport& r, bool include_timing);

struct SummaryRow {
  long chunk_size = 0;
  Algorithm algorithm = Algorithm::wfcm;
  long chunks = 0;
  long total_valid_clusters = 0;
  double mean_valid_clusters = 0.0;
  std::optional<double> mean_mae;
  std::optional<double> mean_error_rate;
  long total_iterations = 0;
  double total_elapsed_seconds = 0.0;
};

std::vector<SummaryRow> summarize(const std::vector<ChunkReport>& reports);
std::string summary_csv(const std::vector<SummaryRow>& rows, bool include_timing);

// Plot-ready series: one row per chunk size, one column per algorithm.
// Missing values serialize as "NA".
struct MetricSeries {
  std::string name;  // valid_clusters | mae | time
  std::vector<long> sizes;
  std::vector<std::string> algorithms;
  // values[size_index][algo_index]
  std::vector<std::vector<std::optional<double>>> values;
};

MetricSeries series_for(const std::vector<SummaryRow>& rows, const std::string& metric,
                        bool include_timing);
std::string dat_file(const MetricSeries& series);

std::string format_double(double v);

}  // namespace streamfuzz
