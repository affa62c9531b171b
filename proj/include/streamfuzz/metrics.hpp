#pragma once

// Evaluation layer: MAE over integer class codes, crisp prediction assignment,
// majority-class cluster mapping and valid-cluster counting.

#include "streamfuzz/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace streamfuzz {

// Class code for records whose label is not in the label map. Rows with this
// code are excluded from predictions and error metrics.
inline constexpr int kUnknownClass = -1;

struct LabeledPrediction {
  std::vector<int> predicted;
  std::vector<int> truth;
};

/// (1/n) * sum |f_i - y_i|
inline double mae(const LabeledPrediction& p) {
  if (p.predicted.size() != p.truth.size()) throw std::invalid_argument("shape error");
  if (p.predicted.empty()) throw std::invalid_argument("empty input");
  long long total = 0;
  for (std::size_t i = 0; i < p.predicted.size(); ++i)
    total += std::llabs(static_cast<long long>(p.predicted[i]) - p.truth[i]);
  return static_cast<double>(total) / static_cast<double>(p.predicted.size());
}

/// Fraction of elements with f_i != y_i.
inline double error_rate(const LabeledPrediction& p) {
  if (p.predicted.size() != p.truth.size()) throw std::invalid_argument("shape error");
  if (p.predicted.empty()) throw std::invalid_argument("empty input");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < p.predicted.size(); ++i)
    if (p.predicted[i] != p.truth[i]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(p.predicted.size());
}

/// Crisp cluster of each point: argmax over the membership column, ties to the
/// lowest cluster index.
template <typename Scalar>
std::vector<Index> crisp_assignment(const Matrix<Scalar>& memberships) {
  std::vector<Index> assignment(static_cast<std::size_t>(memberships.cols()));
  for (Index j = 0; j < memberships.cols(); ++j) {
    Index best = 0;
    memberships.col(j).maxCoeff(&best);  // first maximum = lowest index
    assignment[static_cast<std::size_t>(j)] = best;
  }
  return assignment;
}

/// Majority true class among each cluster's crisply assigned points (unknown
/// labels ignored). Empty clusters fall back to the global majority class.
/// Ties resolve to the lowest class code.
template <typename Scalar>
std::vector<int> majority_mapping(const Matrix<Scalar>& memberships,
                                  const std::vector<int>& true_labels) {
  const Index c = memberships.rows();
  if (static_cast<Index>(true_labels.size()) != memberships.cols())
    throw std::invalid_argument("shape error");

  const auto assignment = crisp_assignment(memberships);
  std::vector<std::map<int, long>> votes(static_cast<std::size_t>(c));
  std::map<int, long> global;
  for (std::size_t j = 0; j < true_labels.size(); ++j) {
    if (true_labels[j] == kUnknownClass) continue;
    ++votes[static_cast<std::size_t>(assignment[j])][true_labels[j]];
    ++global[true_labels[j]];
  }

  auto winner = [](const std::map<int, long>& tally) -> std::optional<int> {
    std::optional<int> best;
    long best_count = 0;
    for (const auto& [code, count] : tally) {  // ascending code order -> lowest code wins ties
      if (count > best_count) {
        best = code;
        best_count = count;
      }
    }
    return best;
  };

  const std::optional<int> global_majority = winner(global);
  std::vector<int> mapping(static_cast<std::size_t>(c), kUnknownClass);
  for (Index i = 0; i < c; ++i) {
    const auto local = winner(votes[static_cast<std::size_t>(i)]);
    if (local)
      mapping[static_cast<std::size_t>(i)] = *local;
    else if (global_majority)
      mapping[static_cast<std::size_t>(i)] = *global_majority;
  }
  return mapping;
}

/// Predictions from crisp assignment through a cluster -> class mapping.
/// Rows with unknown true labels are dropped from the output pair.
template <typename Scalar>
LabeledPrediction assign_predictions(const Matrix<Scalar>& memberships,
                                     const std::vector<int>& cluster_to_class,
                                     const std::vector<int>& point_labels) {
  if (static_cast<Index>(cluster_to_class.size()) != memberships.rows())
    throw std::invalid_argument("mapping gap");
  if (static_cast<Index>(point_labels.size()) != memberships.cols())
    throw std::invalid_argument("shape error");
  for (int mapped : cluster_to_class)
    if (mapped == kUnknownClass) throw std::invalid_argument("mapping gap");

  const auto assignment = crisp_assignment(memberships);
  LabeledPrediction out;
  for (std::size_t j = 0; j < point_labels.size(); ++j) {
    if (point_labels[j] == kUnknownClass) continue;
    out.predicted.push_back(cluster_to_class[static_cast<std::size_t>(assignment[j])]);
    out.truth.push_back(point_labels[j]);
  }
  return out;
}

/// Number of clusters with at least min_support crisply assigned points.
template <typename Scalar>
int count_valid_clusters(const Matrix<Scalar>& memberships, long min_support) {
  if (min_support < 1) throw std::invalid_argument("min_support must be >= 1");
  std::vector<long> support(static_cast<std::size_t>(memberships.rows()), 0);
  for (Index cluster : crisp_assignment(memberships)) ++support[static_cast<std::size_t>(cluster)];
  int valid = 0;
  for (long s : support)
    if (s >= min_support) ++valid;
  return valid;
}

/// Default support threshold: max(2, 0.5% of the chunk).
inline long default_min_support(Index chunk_points) {
  return std::max<long>(2, static_cast<long>(std::ceil(0.005 * static_cast<double>(chunk_points))));
}

/// Validity-index-based alternative to the support rule: cluster i counts as
/// valid when its weighted mean squared spread is smaller than the squared
/// distance to the nearest other center.
template <typename Scalar>
int count_valid_clusters_xb(const Matrix<Scalar>& points, const Matrix<Scalar>& memberships,
                            const Matrix<Scalar>& centroids, const Vector<Scalar>& weights) {
  const Index c = centroids.rows();
  if (c < 2) return 0;
  int valid = 0;
  for (Index i = 0; i < c; ++i) {
    double compactness = 0.0, mass = 0.0;
    for (Index j = 0; j < points.rows(); ++j) {
      const double u2 = static_cast<double>(memberships(i, j)) * memberships(i, j);
      const double w = static_cast<double>(weights(j));
      compactness += w * u2 * static_cast<double>((points.row(j) - centroids.row(i)).squaredNorm());
      mass += w * u2;
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (Index p = 0; p < c; ++p)
      if (p != i)
        nearest = std::min(nearest,
                           static_cast<double>((centroids.row(i) - centroids.row(p)).squaredNorm()));
    if (mass > 0.0 && compactness / mass < nearest) ++valid;
  }
  return valid;
}

}  // namespace streamfuzz
