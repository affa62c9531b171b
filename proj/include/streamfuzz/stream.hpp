#pragma once

// Chunked WFCM streaming: each chunk is clustered together with the previous
// chunk's weighted centers (carried as pseudo-points whose weight fades with
// age), the fit is compressed into new weighted centers, and the raw points
// are discarded. Memory stays O(k*d) regardless of stream length.

#include "streamfuzz/fcm.hpp"
#include "streamfuzz/metrics.hpp"
#include "streamfuzz/report.hpp"
#include "streamfuzz/types.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace streamfuzz {

template <typename Scalar>
struct Chunk {
  long index = 0;           // 1-based arrival ordinal; doubles as the time unit
  Matrix<Scalar> points;    // n x d
  std::vector<int> labels;  // empty, or one class code per point (metrics only)
};

struct TimeWeightPolicy {
  double lambda = 0.1;  // decay rate per chunk-age unit, >= 0
};

/// exp(-lambda * age); age 0 (the current chunk) maps to 1.
inline double time_weight(long age, const TimeWeightPolicy& policy) {
  if (age < 0) throw std::invalid_argument("age must be >= 0");
  if (policy.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  return std::exp(-policy.lambda * static_cast<double>(age));
}

template <typename Scalar>
struct WeightedCenter {
  Vector<Scalar> vector;
  Scalar weight = 0;
};

template <typename Scalar>
struct StreamState {
  std::vector<WeightedCenter<Scalar>> carried;  // empty before the first chunk
  long chunk_count = 0;
  Index k = 0;  // current cluster count, 0 before the first chunk
};

template <typename Scalar>
struct WorkingSet {
  Matrix<Scalar> points;    // chunk points first, carried centers after
  Vector<Scalar> weights;
  Index chunk_rows = 0;     // number of leading rows that belong to the chunk
};

/// Chunk points at weight 1 followed by the carried centers, each carried
/// weight decayed by one chunk-age step.
template <typename Scalar>
WorkingSet<Scalar> assemble_working_set(const Chunk<Scalar>& chunk,
                                        const StreamState<Scalar>& state,
                                        const TimeWeightPolicy& policy) {
  if (chunk.index != state.chunk_count + 1)
    throw std::invalid_argument("chunk index must follow the stream state");
  validate_dataset(chunk.points);

  const Index n = chunk.points.rows();
  const Index extra = static_cast<Index>(state.carried.size());
  for (const auto& center : state.carried)
    if (center.vector.size() != chunk.points.cols()) throw std::invalid_argument("schema drift");

  WorkingSet<Scalar> ws;
  ws.chunk_rows = n;
  ws.points.resize(n + extra, chunk.points.cols());
  ws.points.topRows(n) = chunk.points;
  ws.weights.resize(n + extra);
  ws.weights.head(n).setOnes();

  const Scalar decay = static_cast<Scalar>(time_weight(1, policy));
  for (Index i = 0; i < extra; ++i) {
    ws.points.row(n + i) = state.carried[static_cast<std::size_t>(i)].vector.transpose();
    ws.weights(n + i) = state.carried[static_cast<std::size_t>(i)].weight * decay;
  }
  return ws;
}

/// w_i = sum_j u_ij * w_j. Because membership columns sum to 1, the cluster
/// weights conserve the total working-set weight.
template <typename Scalar>
Vector<Scalar> center_weights(const Matrix<Scalar>& memberships, const Vector<Scalar>& weights) {
  if (memberships.cols() != weights.size())
    throw std::invalid_argument("membership/weight count mismatch");
  return memberships * weights;
}

namespace detail {

// Shared per-chunk report assembly: metrics are computed over the chunk's own
// columns only (carried pseudo-points have no labels and are excluded).
template <typename Scalar>
ChunkReport make_chunk_report(const Chunk<Scalar>& chunk, const FcmResult<Scalar>& fit,
                              Algorithm algorithm, long min_support) {
  const Index n = chunk.points.rows();
  ChunkReport report;
  report.chunk_index = chunk.index;
  report.algorithm = algorithm;
  report.chunk_size = n;
  report.k = fit.centroids.rows();
  report.iterations = fit.iterations;
  report.elapsed_seconds = fit.elapsed_seconds;
  report.objective = fit.objective();

  const Matrix<Scalar> chunk_memberships = fit.memberships.leftCols(n);
  const long support = min_support > 0 ? min_support : default_min_support(n);
  report.valid_clusters = count_valid_clusters(chunk_memberships, support);

  if (static_cast<Index>(chunk.labels.size()) == n) {
    const auto mapping = majority_mapping(chunk_memberships, chunk.labels);
    bool mapped = true;
    for (int m : mapping)
      if (m == kUnknownClass) mapped = false;  // no labeled point anywhere in the chunk
    if (mapped) {
      const auto prediction = assign_predictions(chunk_memberships, mapping, chunk.labels);
      if (!prediction.truth.empty()) {
        report.mae = mae(prediction);
        report.error_rate = error_rate(prediction);
      }
    }
  }
  return report;
}

template <typename Scalar>
std::vector<WeightedCenter<Scalar>> compress_to_centers(const FcmResult<Scalar>& fit,
                                                        const Vector<Scalar>& weights) {
  const Vector<Scalar> mass = center_weights(fit.memberships, weights);
  std::vector<WeightedCenter<Scalar>> carried(static_cast<std::size_t>(fit.centroids.rows()));
  for (Index i = 0; i < fit.centroids.rows(); ++i) {
    carried[static_cast<std::size_t>(i)].vector = fit.centroids.row(i).transpose();
    carried[static_cast<std::size_t>(i)].weight = mass(i);
  }
  return carried;
}

}  // namespace detail

template <typename Scalar>
struct StreamOutcome {
  StreamState<Scalar> state;
  FcmResult<Scalar> result;
  ChunkReport report;
};

/// One WFCM step: assemble the working set, warm-start from the carried
/// centers when their count matches config.cluster_count (seeded sampling
/// otherwise), run weighted FCM and compress the fit into the new state.
template <typename Scalar>
StreamOutcome<Scalar> process_chunk(const StreamState<Scalar>& state, const Chunk<Scalar>& chunk,
                                    const FcmConfig& config, const TimeWeightPolicy& policy,
                                    long min_support = 0) {
  const WorkingSet<Scalar> ws = assemble_working_set(chunk, state, policy);

  Matrix<Scalar> init;
  if (static_cast<Index>(state.carried.size()) == config.cluster_count) {
    init.resize(config.cluster_count, ws.points.cols());
    for (Index i = 0; i < config.cluster_count; ++i)
      init.row(i) = state.carried[static_cast<std::size_t>(i)].vector.transpose();
  } else {
    init = init_centroids(ws.points, config.cluster_count,
                          mix_seed(config.seed, static_cast<std::uint64_t>(chunk.index)));
  }

  StreamOutcome<Scalar> out;
  out.result = run_weighted_fcm(ws.points, ws.weights, config, init);
  out.state.carried = detail::compress_to_centers(out.result, ws.weights);
  out.state.chunk_count = chunk.index;
  out.state.k = config.cluster_count;
  out.report = detail::make_chunk_report(chunk, out.result, Algorithm::wfcm, min_support);
  return out;
}

}  // namespace streamfuzz
