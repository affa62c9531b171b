#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "streamfuzz/stream.hpp"
#include "streamfuzz/synthetic.hpp"

#include <cmath>
#include <vector>

using namespace streamfuzz;

namespace {

std::vector<Chunk<double>> blob_chunks(const BlobStreamSpec& spec, std::uint64_t seed,
                                       Index chunk_size) {
  BlobStreamSource source(spec, seed);
  ChunkStream<BlobStreamSource> chunks(source, chunk_size);
  std::vector<Chunk<double>> out;
  while (auto c = chunks.next()) out.push_back(std::move(*c));
  return out;
}

StreamState<double> state_with(std::vector<std::pair<std::vector<double>, double>> centers,
                               long chunk_count) {
  StreamState<double> state;
  state.chunk_count = chunk_count;
  state.k = static_cast<Index>(centers.size());
  for (auto& [vec, weight] : centers) {
    WeightedCenter<double> wc;
    wc.vector = Eigen::Map<VectorXd>(vec.data(), static_cast<Index>(vec.size()));
    wc.weight = weight;
    state.carried.push_back(wc);
  }
  return state;
}

}  // namespace

TEST_CASE("time_weight") {
  CHECK(time_weight(0, {2.7}) == 1.0);
  CHECK(time_weight(5, {0.0}) == 1.0);
  CHECK(time_weight(1, {std::log(2.0)}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS(time_weight(-1, {0.1}));
}

TEST_CASE("assemble_working_set on an empty state is the chunk itself") {
  Chunk<double> chunk;
  chunk.index = 1;
  chunk.points = MatrixXd::Random(6, 3);
  const auto ws = assemble_working_set(chunk, StreamState<double>{}, {0.5});
  CHECK(ws.points.rows() == 6);
  CHECK(ws.chunk_rows == 6);
  CHECK(ws.weights.size() == 6);
  CHECK(ws.weights.minCoeff() == 1.0);
  CHECK(ws.weights.maxCoeff() == 1.0);
  CHECK(ws.points == chunk.points);
}

TEST_CASE("assemble_working_set appends decayed carried centers") {
  Chunk<double> chunk;
  chunk.index = 2;
  chunk.points = MatrixXd::Random(4, 2);

  SUBCASE("lambda 0 keeps stored weights") {
    const auto state = state_with({{{1, 2}, 10.0}, {{3, 4}, 10.0}}, 1);
    const auto ws = assemble_working_set(chunk, state, {0.0});
    CHECK(ws.points.rows() == 6);
    CHECK(ws.weights(4) == 10.0);
    CHECK(ws.weights(5) == 10.0);
    CHECK(ws.points(4, 0) == 1.0);
    CHECK(ws.points(5, 1) == 4.0);
  }

  SUBCASE("lambda ln2 halves an 8-weight center") {
    const auto state = state_with({{{1, 2}, 8.0}}, 1);
    const auto ws = assemble_working_set(chunk, state, {std::log(2.0)});
    CHECK(ws.weights(4) == doctest::Approx(4.0).epsilon(1e-12));
  }

  SUBCASE("index mismatch is rejected") {
    const auto state = state_with({{{1, 2}, 8.0}}, 5);
    CHECK_THROWS(assemble_working_set(chunk, state, {0.1}));
  }

  SUBCASE("dimension mismatch is schema drift") {
    const auto state = state_with({{{1, 2, 3}, 8.0}}, 1);
    CHECK_THROWS_WITH(assemble_working_set(chunk, state, {0.1}), "schema drift");
  }
}

TEST_CASE("center_weights") {
  // crisp memberships with unit weights count points
  MatrixXd crisp(2, 5);
  crisp << 1, 1, 1, 0, 0,
           0, 0, 0, 1, 1;
  CHECK(center_weights(crisp, VectorXd::Ones(5).eval())(0) == 3.0);
  CHECK(center_weights(crisp, VectorXd::Ones(5).eval())(1) == 2.0);

  // uniform memberships split the mass evenly
  MatrixXd uniform = MatrixXd::Constant(4, 8, 0.25);
  const VectorXd even = center_weights(uniform, VectorXd::Ones(8).eval());
  for (Index i = 0; i < 4; ++i) CHECK(even(i) == doctest::Approx(2.0));

  // single point of weight 4 with column (0.75, 0.25)
  MatrixXd one(2, 1);
  one << 0.75, 0.25;
  VectorXd w4(1);
  w4 << 4.0;
  const VectorXd split = center_weights(one, w4);
  CHECK(split(0) == 3.0);
  CHECK(split(1) == 1.0);
}

TEST_CASE("single chunk reduces to batch weighted FCM") {
  BlobStreamSpec spec;
  spec.blobs = 3;
  spec.dim = 2;
  spec.records = 90;
  const auto chunks = blob_chunks(spec, 7, 90);
  REQUIRE(chunks.size() == 1);

  FcmConfig config;
  config.cluster_count = 3;
  config.seed = 99;
  const auto outcome = process_chunk(StreamState<double>{}, chunks[0], config, {0.1});

  const MatrixXd init = init_centroids(chunks[0].points, 3, mix_seed(99, 1));
  const auto batch =
      run_weighted_fcm(chunks[0].points, VectorXd::Ones(90).eval(), config, init);
  CHECK(outcome.result.iterations == batch.iterations);
  CHECK(outcome.result.centroids == batch.centroids);
  CHECK(outcome.state.chunk_count == 1);
  CHECK(outcome.state.k == 3);
}

TEST_CASE("warm start speeds up the second identical chunk") {
  BlobStreamSpec spec;
  spec.blobs = 4;
  spec.dim = 3;
  spec.records = 200;
  const auto chunks = blob_chunks(spec, 3, 200);
  REQUIRE(chunks.size() == 1);

  Chunk<double> first = chunks[0];
  Chunk<double> second = chunks[0];
  second.index = 2;

  FcmConfig config;
  config.cluster_count = 4;
  config.seed = 11;
  const auto r1 = process_chunk(StreamState<double>{}, first, config, {0.1});
  const auto r2 = process_chunk(r1.state, second, config, {0.1});
  CHECK(r2.result.iterations < r1.result.iterations);
}

TEST_CASE("carried weight equals total working-set weight after each chunk") {
  BlobStreamSpec spec;
  spec.blobs = 3;
  spec.dim = 2;
  spec.records = 500;
  const auto chunks = blob_chunks(spec, 21, 100);
  REQUIRE(chunks.size() == 5);

  FcmConfig config;
  config.cluster_count = 3;
  config.seed = 5;
  const TimeWeightPolicy policy{0.35};

  StreamState<double> state;
  double prior_total = 0.0;
  for (const auto& chunk : chunks) {
    const double expected =
        static_cast<double>(chunk.points.rows()) + prior_total * time_weight(1, policy);
    const auto outcome = process_chunk(state, chunk, config, policy);
    state = outcome.state;

    double carried_total = 0.0;
    for (const auto& wc : state.carried) carried_total += wc.weight;
    CHECK(carried_total == doctest::Approx(expected).epsilon(1e-9));
    CHECK(state.carried.size() == 3);  // O(k d) state, no point buffers
    prior_total = carried_total;
  }
}

TEST_CASE("carried influence decays strictly with age") {
  const TimeWeightPolicy policy{0.4};
  double weight = 8.0;
  double previous = weight;
  for (long age = 1; age <= 10; ++age) {
    weight *= time_weight(1, policy);
    CHECK(weight < previous);
    CHECK(weight == doctest::Approx(8.0 * std::exp(-0.4 * static_cast<double>(age)))
                        .epsilon(1e-12));
    previous = weight;
  }
}

TEST_CASE("identical streams give bit-identical report sequences") {
  BlobStreamSpec spec;
  spec.blobs = 3;
  spec.dim = 2;
  spec.records = 300;

  auto run = [&] {
    std::vector<ChunkReport> reports;
    FcmConfig config;
    config.cluster_count = 3;
    config.seed = 77;
    StreamState<double> state;
    for (const auto& chunk : blob_chunks(spec, 13, 75)) {
      auto outcome = process_chunk(state, chunk, config, {0.1});
      state = outcome.state;
      reports.push_back(outcome.report);
    }
    return reports;
  };

  const auto a = run();
  const auto b = run();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].valid_clusters == b[i].valid_clusters);
    CHECK(a[i].objective == b[i].objective);  // bit-identical
    CHECK(a[i].iterations == b[i].iterations);
    CHECK(a[i].mae == b[i].mae);
  }
}

TEST_CASE("labels feed the chunk report") {
  BlobStreamSpec spec;
  spec.blobs = 2;
  spec.dim = 2;
  spec.records = 80;
  spec.stddev = 0.1;
  const auto chunks = blob_chunks(spec, 31, 80);
  FcmConfig config;
  config.cluster_count = 2;
  const auto outcome = process_chunk(StreamState<double>{}, chunks[0], config, {0.1});
  REQUIRE(outcome.report.mae.has_value());
  CHECK(*outcome.report.mae == 0.0);  // well-separated blobs, majority mapping is exact
  CHECK(outcome.report.valid_clusters == 2);
  CHECK(outcome.report.algorithm == Algorithm::wfcm);
}
