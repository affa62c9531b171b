#pragma once

// Batch weighted fuzzy c-means. Memberships follow the standard FCM rule
//   u_ij = 1 / sum_k (||x_j - v_i|| / ||x_j - v_k||)^(2/(m-1))
// and centers are weighted means
//   v_i = sum_j w_j u_ij^m x_j / sum_j w_j u_ij^m.
// With all weights equal to 1 this reduces to plain FCM.

#include "streamfuzz/rng.hpp"
#include "streamfuzz/types.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace streamfuzz {

/// Squared Euclidean distances, one row per center: result(i, j) = ||x_j - v_i||^2.
/// Evaluated directly (not via the Gram expansion) so coincident points give an
/// exact zero.
template <typename Scalar>
Matrix<Scalar> pairwise_sqdist(const Matrix<Scalar>& points, const Matrix<Scalar>& centroids) {
  const Index c = centroids.rows();
  const Index n = points.rows();
  Matrix<Scalar> d2(c, n);
  for (Index i = 0; i < c; ++i) {
    d2.row(i) = (points.rowwise() - centroids.row(i)).rowwise().squaredNorm().transpose();
  }
  return d2;
}

/// c distinct input points chosen by seeded sampling without replacement.
template <typename Scalar>
Matrix<Scalar> init_centroids(const Matrix<Scalar>& points, Index c, std::uint64_t seed) {
  if (c < 1) throw std::invalid_argument("invalid cluster count");
  if (c > points.rows()) throw std::invalid_argument("insufficient points");
  const auto picks = sample_without_replacement(static_cast<std::size_t>(points.rows()),
                                                static_cast<std::size_t>(c), seed);
  Matrix<Scalar> centroids(c, points.cols());
  for (Index i = 0; i < c; ++i) centroids.row(i) = points.row(static_cast<Index>(picks[i]));
  return centroids;
}

/// Membership matrix (c x n) for fixed centers. Points coinciding with one or
/// more centers get membership split uniformly over the coincident centers.
template <typename Scalar>
Matrix<Scalar> update_memberships(const Matrix<Scalar>& points, const Matrix<Scalar>& centroids,
                                  double fuzzifier) {
  if (fuzzifier <= 1.0) throw std::invalid_argument("fuzzifier must be > 1");
  if (points.cols() != centroids.cols())
    throw std::invalid_argument("point/centroid dimension mismatch");

  const Index c = centroids.rows();
  const Index n = points.rows();
  const double exponent = 1.0 / (fuzzifier - 1.0);  // applied to squared-distance ratios
  const Matrix<Scalar> d2 = pairwise_sqdist(points, centroids);

  Matrix<Scalar> u(c, n);
  for (Index j = 0; j < n; ++j) {
    Index coincident = 0;
    for (Index i = 0; i < c; ++i)
      if (d2(i, j) == Scalar(0)) ++coincident;

    if (coincident > 0) {
      for (Index i = 0; i < c; ++i)
        u(i, j) = d2(i, j) == Scalar(0) ? Scalar(1) / Scalar(coincident) : Scalar(0);
      continue;
    }

    for (Index i = 0; i < c; ++i) {
      double s = 0.0;
      const double di = static_cast<double>(d2(i, j));
      for (Index k = 0; k < c; ++k) {
        const double ratio = di / static_cast<double>(d2(k, j));
        s += exponent == 1.0 ? ratio : std::pow(ratio, exponent);
      }
      u(i, j) = static_cast<Scalar>(1.0 / s);
    }
  }
  return u;
}

/// Weighted centroid update. Throws DegenerateClusterError for the lowest
/// cluster index whose weighted membership mass is zero.
template <typename Scalar>
Matrix<Scalar> update_centroids(const Matrix<Scalar>& points, const Matrix<Scalar>& memberships,
                                const Vector<Scalar>& weights, double fuzzifier) {
  const Index c = memberships.rows();
  const Index n = points.rows();
  if (memberships.cols() != n) throw std::invalid_argument("membership/point count mismatch");
  validate_weights(weights, n);

  Matrix<Scalar> um;  // w_j * u_ij^m
  if (fuzzifier == 2.0) {
    um = memberships.array().square();
  } else {
    um = memberships.array().pow(static_cast<Scalar>(fuzzifier));
  }
  um = um * weights.asDiagonal();

  const Vector<Scalar> denom = um.rowwise().sum();
  for (Index i = 0; i < c; ++i)
    if (denom(i) == Scalar(0)) throw DegenerateClusterError(i);

  Matrix<Scalar> centroids = um * points;
  centroids.array().colwise() /= denom.array();
  return centroids;
}

/// J = sum_i sum_j w_j u_ij^m ||x_j - v_i||^2
template <typename Scalar>
double objective(const Matrix<Scalar>& points, const Matrix<Scalar>& memberships,
                 const Matrix<Scalar>& centroids, const Vector<Scalar>& weights,
                 double fuzzifier) {
  const Matrix<Scalar> d2 = pairwise_sqdist(points, centroids);
  Matrix<Scalar> um;
  if (fuzzifier == 2.0) {
    um = memberships.array().square();
  } else {
    um = memberships.array().pow(static_cast<Scalar>(fuzzifier));
  }
  um = um * weights.asDiagonal();
  return static_cast<double>((um.array() * d2.array()).sum());
}

namespace detail {

// Point with the largest weighted distance to its best center; ties resolved
// to the lowest point index. Used to re-seed degenerate clusters.
template <typename Scalar>
Index worst_fit_point(const Matrix<Scalar>& points, const Matrix<Scalar>& centroids,
                      const Vector<Scalar>& weights) {
  const Matrix<Scalar> d2 = pairwise_sqdist(points, centroids);
  Index worst = 0;
  Scalar worst_score = -1;
  for (Index j = 0; j < points.rows(); ++j) {
    const Scalar score = weights(j) * d2.col(j).minCoeff();
    if (score > worst_score) {
      worst_score = score;
      worst = j;
    }
  }
  return worst;
}

}  // namespace detail

/// Alternating membership/centroid optimization starting from the given
/// centers. Stops when the objective improves by less than config.epsilon or
/// at config.max_iterations. A degenerate cluster is re-seeded to the worst-fit
/// point once; a second failure of the same center propagates the error.
template <typename Scalar>
FcmResult<Scalar> run_weighted_fcm(const Matrix<Scalar>& points, const Vector<Scalar>& weights,
                                   const FcmConfig& config, const Matrix<Scalar>& init) {
  validate_dataset(points);
  validate_weights(weights, points.rows());
  if (config.fuzzifier <= 1.0) throw std::invalid_argument("fuzzifier must be > 1");
  if (config.epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (init.rows() < 1 || init.rows() > points.rows())
    throw std::invalid_argument("init must hold between 1 and n centers");
  if (init.rows() != config.cluster_count)
    throw std::invalid_argument("init does not match configured cluster count");
  if (init.cols() != points.cols()) throw std::invalid_argument("init dimension mismatch");

  const auto start = std::chrono::steady_clock::now();

  FcmResult<Scalar> result;
  result.centroids = init;
  std::vector<int> reseeds(static_cast<std::size_t>(init.rows()), 0);
  double previous = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    result.memberships = update_memberships(points, result.centroids, config.fuzzifier);
    for (;;) {
      try {
        result.centroids =
            update_centroids(points, result.memberships, weights, config.fuzzifier);
        break;
      } catch (const DegenerateClusterError& e) {
        if (++reseeds[static_cast<std::size_t>(e.cluster())] > 1) throw;
        const Index j = detail::worst_fit_point(points, result.centroids, weights);
        result.centroids.row(e.cluster()) = points.row(j);
        result.memberships = update_memberships(points, result.centroids, config.fuzzifier);
      }
    }
    const double j = objective(points, result.memberships, result.centroids, weights,
                               config.fuzzifier);
    result.objective_history.push_back(j);
    result.iterations = iter + 1;
    if (std::abs(j - previous) < config.epsilon) break;
    previous = j;
  }

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace streamfuzz
