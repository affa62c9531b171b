#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace streamfuzz {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

// Thrown by the centroid update when a cluster collects zero weighted
// membership mass; carries the cluster index so the iteration loop can
// re-seed that center.
class DegenerateClusterError : public std::runtime_error {
public:
  explicit DegenerateClusterError(Index cluster)
      : std::runtime_error("degenerate cluster"), cluster_(cluster) {}

  Index cluster() const { return cluster_; }

private:
  Index cluster_;
};

struct FcmConfig {
  Index cluster_count = 2;
  double fuzzifier = 2.0;  // m, must be > 1
  double epsilon = 1e-5;   // stop when the objective improves by less than this
  int max_iterations = 100;
  std::uint64_t seed = 0;
};

template <typename Scalar>
struct FcmResult {
  Matrix<Scalar> centroids;    // c x d, one center per row
  Matrix<Scalar> memberships;  // c x n, every column sums to 1
  std::vector<double> objective_history;  // one entry per iteration
  int iterations = 0;
  double elapsed_seconds = 0.0;  // clustering loop only

  double objective() const {
    return objective_history.empty() ? 0.0 : objective_history.back();
  }
};

template <typename Scalar>
bool all_finite(const Matrix<Scalar>& m) {
  return m.allFinite();
}

template <typename Scalar>
void validate_dataset(const Matrix<Scalar>& points) {
  if (points.rows() < 1 || points.cols() < 1)
    throw std::invalid_argument("dataset must contain at least one point");
  if (!points.allFinite())
    throw std::invalid_argument("dataset contains non-finite values");
}

template <typename Scalar>
void validate_weights(const Vector<Scalar>& w, Index n) {
  if (w.size() != n) throw std::invalid_argument("weight count does not match point count");
  if ((w.array() < Scalar(0)).any())
    throw std::invalid_argument("point weights must be nonnegative");
  if (!(w.array() > Scalar(0)).any())
    throw std::invalid_argument("at least one point weight must be positive");
}

}  // namespace streamfuzz
