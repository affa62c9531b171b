#pragma once

// WFCM-AC: per-chunk z-score normalization against cumulative stream
// statistics, plus a k+-1 structure search. Split candidates add the farthest
// crisply-assigned point of each cluster as a new center; merge candidates
// drop one seed center at a time. Every candidate is refit with weighted FCM
// on the current working set and the structure with the best (lowest)
// validity score wins.

#include "streamfuzz/fcm.hpp"
#include "streamfuzz/stream.hpp"

#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace streamfuzz {

// -------------------------------------------------------------------------
// Streaming normalization statistics (Welford update, population std).

template <typename Scalar>
struct RunningStats {
  long long count = 0;
  Vector<Scalar> mean;  // per feature
  Vector<Scalar> m2;    // per feature, sum of squared deviations

  Vector<Scalar> stddev() const {
    if (count <= 0) return Vector<Scalar>();
    return (m2 / static_cast<Scalar>(count)).array().sqrt();
  }
};

template <typename Scalar>
RunningStats<Scalar> update_stats(RunningStats<Scalar> stats, const Chunk<Scalar>& chunk) {
  if (chunk.points.rows() == 0) return stats;
  const Index d = chunk.points.cols();
  if (stats.count == 0) {
    stats.mean = Vector<Scalar>::Zero(d);
    stats.m2 = Vector<Scalar>::Zero(d);
  } else if (stats.mean.size() != d) {
    throw std::invalid_argument("schema drift");
  }
  for (Index j = 0; j < chunk.points.rows(); ++j) {
    ++stats.count;
    const Vector<Scalar> delta = chunk.points.row(j).transpose() - stats.mean;
    stats.mean += delta / static_cast<Scalar>(stats.count);
    stats.m2.array() +=
        delta.array() * (chunk.points.row(j).transpose() - stats.mean).array();
  }
  return stats;
}

inline constexpr double kStdFloor = 1e-12;  // features below this map to 0

template <typename Scalar>
Chunk<Scalar> normalize(const Chunk<Scalar>& chunk, const RunningStats<Scalar>& stats) {
  if (stats.count < 1) throw std::invalid_argument("no statistics");
  if (stats.mean.size() != chunk.points.cols()) throw std::invalid_argument("schema drift");

  const Vector<Scalar> std = stats.stddev();
  Chunk<Scalar> out = chunk;
  for (Index f = 0; f < chunk.points.cols(); ++f) {
    if (static_cast<double>(std(f)) < kStdFloor) {
      out.points.col(f).setZero();
    } else {
      out.points.col(f) = (chunk.points.col(f).array() - stats.mean(f)) / std(f);
    }
  }
  return out;
}

/// Inverse of normalize for the same stats. Zero-std features stay zero.
template <typename Scalar>
Chunk<Scalar> denormalize(const Chunk<Scalar>& chunk, const RunningStats<Scalar>& stats) {
  if (stats.count < 1) throw std::invalid_argument("no statistics");
  const Vector<Scalar> std = stats.stddev();
  Chunk<Scalar> out = chunk;
  for (Index f = 0; f < chunk.points.cols(); ++f) {
    if (static_cast<double>(std(f)) < kStdFloor) {
      out.points.col(f).setZero();
    } else {
      out.points.col(f) = chunk.points.col(f).array() * std(f) + stats.mean(f);
    }
  }
  return out;
}

// -------------------------------------------------------------------------
// Candidate structures.

struct AcConfig {
  FcmConfig base;
  Index k_min = 2;   // validity indices are undefined at k = 1
  Index k_max = 0;   // 0 = default to 2 * base.cluster_count
  std::string validity = "xie-beni";

  Index effective_k_max() const { return k_max > 0 ? k_max : 2 * base.cluster_count; }
};

enum class CandidateKind { keep, merge, split };

template <typename Scalar>
struct CandidateStructure {
  CandidateKind kind = CandidateKind::keep;
  Index target = -1;  // split: source cluster; merge: eliminated center; keep: -1
  Matrix<Scalar> init;
  FcmResult<Scalar> result;
  double validity = std::numeric_limits<double>::infinity();
  bool evaluated = false;
  std::string skip_reason;
};

template <typename Scalar>
struct SplitProposal {
  Index cluster = 0;      // cluster whose farthest point becomes the new center
  Matrix<Scalar> init;    // k+1 centers, new one appended last
  bool degenerate = false;  // new center duplicates an existing one
};

/// One split candidate per cluster that owns at least one crisply assigned
/// point: the existing centers plus that cluster's farthest member.
template <typename Scalar>
std::vector<SplitProposal<Scalar>> propose_split(const Matrix<Scalar>& points,
                                                 const Matrix<Scalar>& memberships,
                                                 const Matrix<Scalar>& centroids) {
  const Index k = centroids.rows();
  const Index n = points.rows();
  if (k + 1 > n) throw std::invalid_argument("too few points to split");

  const auto assignment = crisp_assignment(memberships);
  std::vector<SplitProposal<Scalar>> proposals;
  for (Index t = 0; t < k; ++t) {
    Index farthest = -1;
    Scalar best = -1;
    for (Index j = 0; j < n; ++j) {
      if (assignment[static_cast<std::size_t>(j)] != t) continue;
      const Scalar d2 = (points.row(j) - centroids.row(t)).squaredNorm();
      if (d2 > best) {  // strict: ties keep the lowest point index
        best = d2;
        farthest = j;
      }
    }
    if (farthest < 0) continue;  // no crisp member, no candidate

    SplitProposal<Scalar> p;
    p.cluster = t;
    p.init.resize(k + 1, centroids.cols());
    p.init.topRows(k) = centroids;
    p.init.row(k) = points.row(farthest);
    for (Index i = 0; i < k; ++i)
      if ((p.init.row(k).array() == centroids.row(i).array()).all()) p.degenerate = true;
    proposals.push_back(std::move(p));
  }
  return proposals;
}

/// Candidate i drops center i, order preserved. Empty when a merge would go
/// below k_min.
template <typename Scalar>
std::vector<Matrix<Scalar>> propose_merge(const Matrix<Scalar>& centroids, Index k_min) {
  const Index k = centroids.rows();
  std::vector<Matrix<Scalar>> candidates;
  if (k < k_min + 1) return candidates;
  for (Index drop = 0; drop < k; ++drop) {
    Matrix<Scalar> init(k - 1, centroids.cols());
    Index row = 0;
    for (Index i = 0; i < k; ++i)
      if (i != drop) init.row(row++) = centroids.row(i);
    candidates.push_back(std::move(init));
  }
  return candidates;
}

/// Weighted Xie-Beni score: compactness over separation, lower is better.
///   [ sum_ij w_j u_ij^2 ||x_j - v_i||^2 ] / [ (sum_j w_j) min_{i!=p} ||v_i - v_p||^2 ]
/// Identical centers yield +infinity.
template <typename Scalar>
double validity_index(const Matrix<Scalar>& points, const Matrix<Scalar>& memberships,
                      const Matrix<Scalar>& centroids, const Vector<Scalar>& weights) {
  const Index k = centroids.rows();
  if (k < 2) throw std::invalid_argument("validity index requires k >= 2");

  double separation = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < k; ++i)
    for (Index p = i + 1; p < k; ++p)
      separation = std::min(
          separation, static_cast<double>((centroids.row(i) - centroids.row(p)).squaredNorm()));
  if (separation == 0.0) return std::numeric_limits<double>::infinity();

  const Matrix<Scalar> d2 = pairwise_sqdist(points, centroids);
  const Matrix<Scalar> u2 = memberships.array().square().matrix() * weights.asDiagonal();
  const double compactness = static_cast<double>((u2.array() * d2.array()).sum());
  const double total_weight = static_cast<double>(weights.sum());
  return compactness / (total_weight * separation);
}

namespace detail {

inline unsigned thread_cap() {
  if (const char* env = std::getenv("STREAMFUZZ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace detail

template <typename Scalar>
struct AcOutcome {
  StreamState<Scalar> state;
  CandidateStructure<Scalar> winner;
  ChunkReport report;
  std::vector<CandidateStructure<Scalar>> candidates;  // everything that was considered
};

/// Evaluate the keep-k refit plus all split and merge candidates on the
/// chunk's working set and adopt the structure with the lowest validity score.
/// Ties prefer keep, then merge, then split, then the lowest target index.
/// A failing candidate is skipped, never aborting the chunk.
template <typename Scalar>
AcOutcome<Scalar> adapt_cluster_count(const StreamState<Scalar>& state, const Chunk<Scalar>& chunk,
                                      const AcConfig& config, const TimeWeightPolicy& policy,
                                      long min_support = 0) {
  const Index k_max = config.effective_k_max();
  if (config.k_min < 2) throw std::invalid_argument("k_min must be >= 2");
  if (config.k_min > k_max) throw std::invalid_argument("k_min must not exceed k_max");

  const Index k = state.chunk_count == 0 ? config.base.cluster_count : state.k;
  if (k < config.k_min || k > k_max) throw std::invalid_argument("state k out of bounds");

  const WorkingSet<Scalar> ws = assemble_working_set(chunk, state, policy);

  auto config_for = [&](Index clusters) {
    FcmConfig c = config.base;
    c.cluster_count = clusters;
    return c;
  };
  auto score = [&](const FcmResult<Scalar>& fit) {
    if (config.validity != "xie-beni") throw std::invalid_argument("unknown validity index");
    return validity_index(ws.points, fit.memberships, fit.centroids, ws.weights);
  };

  // Keep-k refit first: split and merge proposals both derive from it.
  CandidateStructure<Scalar> keep;
  keep.kind = CandidateKind::keep;
  if (static_cast<Index>(state.carried.size()) == k) {
    keep.init.resize(k, ws.points.cols());
    for (Index i = 0; i < k; ++i)
      keep.init.row(i) = state.carried[static_cast<std::size_t>(i)].vector.transpose();
  } else {
    keep.init = init_centroids(ws.points, k,
                               mix_seed(config.base.seed, static_cast<std::uint64_t>(chunk.index)));
  }
  keep.result = run_weighted_fcm(ws.points, ws.weights, config_for(k), keep.init);
  keep.validity = score(keep.result);
  keep.evaluated = true;

  std::vector<CandidateStructure<Scalar>> candidates;
  candidates.push_back(keep);

  if (k - 1 >= config.k_min) {
    Index drop = 0;
    for (auto& init : propose_merge(keep.result.centroids, config.k_min)) {
      CandidateStructure<Scalar> cand;
      cand.kind = CandidateKind::merge;
      cand.target = drop++;
      cand.init = std::move(init);
      candidates.push_back(std::move(cand));
    }
  }

  if (k + 1 <= k_max) {
    if (ws.points.rows() < k + 1) {
      CandidateStructure<Scalar> cand;
      cand.kind = CandidateKind::split;
      cand.skip_reason = "too few points to split";
      candidates.push_back(std::move(cand));
    } else {
      for (auto& p : propose_split(ws.points, keep.result.memberships, keep.result.centroids)) {
        CandidateStructure<Scalar> cand;
        cand.kind = CandidateKind::split;
        cand.target = p.cluster;
        cand.init = std::move(p.init);
        if (p.degenerate) {
          // Duplicate center: counted as a candidate, scored worst possible.
          cand.evaluated = true;
          cand.validity = std::numeric_limits<double>::infinity();
          cand.skip_reason = "degenerate split (duplicate center)";
        }
        candidates.push_back(std::move(cand));
      }
    }
  }

  // Refit the remaining candidates; they are independent, so a small thread
  // fan-out is safe. Results land in fixed slots, selection order below is
  // deterministic regardless of thread count.
  auto evaluate = [&](CandidateStructure<Scalar>& cand) {
    if (cand.evaluated || !cand.skip_reason.empty()) return;
    try {
      cand.result =
          run_weighted_fcm(ws.points, ws.weights, config_for(cand.init.rows()), cand.init);
      cand.validity = score(cand.result);
      cand.evaluated = true;
    } catch (const std::exception& e) {
      cand.skip_reason = e.what();
    }
  };

  const unsigned threads =
      std::min<unsigned>(detail::thread_cap(), static_cast<unsigned>(candidates.size()));
  if (threads <= 1 || candidates.size() <= 2) {
    for (auto& cand : candidates) evaluate(cand);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < candidates.size(); i += threads) evaluate(candidates[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Deterministic selection: validity first, then keep < merge < split, then
  // lowest target index.
  const CandidateStructure<Scalar>* winner = nullptr;
  for (const auto& cand : candidates) {
    if (!cand.evaluated) continue;
    if (winner == nullptr || cand.validity < winner->validity) winner = &cand;
  }
  if (winner == nullptr) throw std::runtime_error("all candidate structures failed");

  AcOutcome<Scalar> out;
  out.winner = *winner;
  out.state.carried = detail::compress_to_centers(out.winner.result, ws.weights);
  out.state.chunk_count = chunk.index;
  out.state.k = out.winner.result.centroids.rows();
  out.report = detail::make_chunk_report(chunk, out.winner.result, Algorithm::wfcm_ac, min_support);

  long iterations = 0;
  double elapsed = 0.0;
  for (const auto& cand : candidates) {
    if (!cand.evaluated) continue;
    iterations += cand.result.iterations;
    elapsed += cand.result.elapsed_seconds;
  }
  out.report.iterations = iterations;  // total work across every refit
  out.report.elapsed_seconds = elapsed;
  out.candidates = std::move(candidates);
  return out;
}

}  // namespace streamfuzz
