#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "streamfuzz/ingest.hpp"
#include "streamfuzz/metrics.hpp"

#include <algorithm>
#include <random>

using namespace streamfuzz;

TEST_CASE("mae hand cases and errors") {
  CHECK(mae({{1, 2, 3}, {1, 2, 3}}) == 0.0);
  CHECK(mae({{1, 2, 3}, {2, 2, 5}}) == doctest::Approx(1.0));
  CHECK(mae({{0}, {4}}) == 4.0);
  CHECK_THROWS_WITH(mae({{1, 2}, {1}}), "shape error");
  CHECK_THROWS_WITH(mae({{}, {}}), "empty input");
}

TEST_CASE("mae properties") {
  std::mt19937_64 gen(5);
  LabeledPrediction p;
  for (int i = 0; i < 200; ++i) {
    p.predicted.push_back(static_cast<int>(gen() % 5));
    p.truth.push_back(static_cast<int>(gen() % 5));
  }

  // zero iff elementwise equal
  CHECK((mae(p) == 0.0) == (p.predicted == p.truth));
  LabeledPrediction same{p.truth, p.truth};
  CHECK(mae(same) == 0.0);

  // invariant under a common permutation of the pairs
  std::vector<std::size_t> order(p.predicted.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), gen);
  LabeledPrediction shuffled;
  for (std::size_t i : order) {
    shuffled.predicted.push_back(p.predicted[i]);
    shuffled.truth.push_back(p.truth[i]);
  }
  CHECK(mae(shuffled) == mae(p));

  // 1-Lipschitz per element: one prediction moved by delta shifts MAE by |delta|/n
  LabeledPrediction bumped = p;
  bumped.predicted[7] = p.truth[7];  // remove element 7's error entirely
  const double removed = std::abs(p.predicted[7] - p.truth[7]);
  CHECK(mae(p) - mae(bumped) ==
        doctest::Approx(removed / static_cast<double>(p.predicted.size())).epsilon(1e-12));
}

TEST_CASE("assign_predictions uses argmax with low-index ties") {
  MatrixXd u(2, 3);
  u << 1.0, 0.5, 0.2,
       0.0, 0.5, 0.8;
  const std::vector<int> mapping{3, 7};
  const std::vector<int> labels{3, 7, 7};
  const auto p = assign_predictions(u, mapping, labels);
  CHECK(p.predicted == std::vector<int>{3, 3, 7});  // column 1 tie -> cluster 0
  CHECK(p.truth == labels);

  // memberships from the 1-D fcm example: argmax picks the DoS cluster
  MatrixXd example(2, 1);
  example << 16.0 / 17.0, 1.0 / 17.0;
  const auto dos = assign_predictions(example, {kClassDos, kClassNormal}, {kClassDos});
  CHECK(dos.predicted[0] == kClassDos);
}

TEST_CASE("assign_predictions drops unknown labels and validates the mapping") {
  MatrixXd u(1, 2);
  u << 1.0, 1.0;
  const auto p = assign_predictions(u, {4}, {kUnknownClass, 2});
  CHECK(p.predicted.size() == 1);
  CHECK(p.truth == std::vector<int>{2});

  CHECK_THROWS_WITH(assign_predictions(u, {kUnknownClass}, {0, 0}), "mapping gap");
  CHECK_THROWS_WITH(assign_predictions(u, {1, 2}, {0, 0}), "mapping gap");
}

TEST_CASE("majority_mapping") {
  SUBCASE("majority vote per cluster") {
    MatrixXd u(1, 3);
    u << 1, 1, 1;
    CHECK(majority_mapping(u, {1, 1, 2}) == std::vector<int>{1});
  }

  SUBCASE("empty cluster falls back to the global majority") {
    MatrixXd u(2, 3);
    u << 1, 1, 1,
         0, 0, 0;
    CHECK(majority_mapping(u, {0, 0, 4}) == std::vector<int>{0, 0});
  }

  SUBCASE("tie resolves to the lowest class code") {
    MatrixXd u(1, 2);
    u << 1, 1;
    CHECK(majority_mapping(u, {2, 1}) == std::vector<int>{1});
  }
}

TEST_CASE("majority mapping then assignment is exact on pure crisp clusters") {
  MatrixXd u(3, 6);
  u << 1, 1, 0, 0, 0, 0,
       0, 0, 1, 1, 0, 0,
       0, 0, 0, 0, 1, 1;
  const std::vector<int> labels{4, 4, 0, 0, 2, 2};
  const auto mapping = majority_mapping(u, labels);
  const auto p = assign_predictions(u, mapping, labels);
  CHECK(mae(p) == 0.0);
  CHECK(error_rate(p) == 0.0);
}

TEST_CASE("count_valid_clusters") {
  MatrixXd u(3, 12);
  u.setZero();
  for (int j = 0; j < 10; ++j) u(0, j) = 1;  // support 10
  u(1, 10) = 1;
  u(1, 11) = 1;                              // support 2
  // cluster 2 empty

  CHECK(count_valid_clusters(u, 1) == 2);
  CHECK(count_valid_clusters(u, 2) == 2);
  CHECK(count_valid_clusters(u, 3) == 1);
  CHECK(count_valid_clusters(u, 11) == 0);

  // monotone non-increasing in min_support
  int previous = count_valid_clusters(u, 1);
  for (long s = 2; s <= 12; ++s) {
    const int now = count_valid_clusters(u, s);
    CHECK(now <= previous);
    previous = now;
  }

  // all clusters non-empty at min_support 1 counts k
  MatrixXd full(2, 4);
  full << 1, 1, 0, 0,
          0, 0, 1, 1;
  CHECK(count_valid_clusters(full, 1) == 2);
}

TEST_CASE("default_min_support") {
  CHECK(default_min_support(100) == 2);
  CHECK(default_min_support(1000) == 5);
  CHECK(default_min_support(4000) == 20);
}

TEST_CASE("xb-style validity flagging") {
  // two tight, well-separated clusters: both valid
  MatrixXd points(4, 1);
  points << 0, 1, 10, 11;
  MatrixXd v(2, 1);
  v << 0.5, 10.5;
  MatrixXd u(2, 4);
  u << 1, 1, 0, 0,
       0, 0, 1, 1;
  VectorXd w = VectorXd::Ones(4);
  CHECK(count_valid_clusters_xb(points, u, v, w) == 2);

  // duplicate centers have zero separation: nothing is valid
  MatrixXd dup(2, 1);
  dup << 5, 5;
  CHECK(count_valid_clusters_xb(points, u, dup, w) == 0);
}
