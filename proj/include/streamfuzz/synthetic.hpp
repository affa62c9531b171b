#pragma once

// Synthetic Gaussian-blob stream for tests and generator-mode benchmarks.
// Blob centers sit on the diagonal (spread apart by spread*sqrt(dim)), drift
// rigidly over time, and an optional extra blob can be born mid-stream.
// Labels are blob indices.

#include "streamfuzz/ingest.hpp"
#include "streamfuzz/rng.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace streamfuzz {

struct BlobStreamSpec {
  int blobs = 5;
  Index dim = 4;
  long records = 4000;
  double stddev = 0.5;
  double spread = 10.0;   // diagonal step between adjacent blob centers
  double drift = 0.0;     // rigid per-record translation of all centers
  long birth_at = 0;      // record index at which blob `blobs` appears; 0 = never

  // "blobs=5,dim=4,n=4000,std=0.5,spread=10,drift=0,birth=0"
  static BlobStreamSpec parse(const std::string& text);
  std::string to_string() const;
};

class BlobStreamSource {
public:
  BlobStreamSource(const BlobStreamSpec& spec, std::uint64_t seed)
      : spec_(spec), gen_(mix_seed(seed, 0x626c6f62)) {
    if (spec.blobs < 1 || spec.dim < 1 || spec.records < 0 || spec.stddev < 0.0)
      throw std::invalid_argument("invalid blob stream spec");
  }

  Index dimension() const { return spec_.dim; }

  std::optional<LabeledPoint> next() {
    if (emitted_ >= spec_.records) return std::nullopt;
    const bool born = spec_.birth_at > 0 && emitted_ >= spec_.birth_at;
    const int active = spec_.blobs + (born ? 1 : 0);
    const int blob = static_cast<int>(uniform_below(gen_, static_cast<std::uint64_t>(active)));

    const double unit = 1.0 / std::sqrt(static_cast<double>(spec_.dim));
    const double base = spec_.spread * static_cast<double>(blob + 1);
    const double shift = spec_.drift * static_cast<double>(emitted_) * unit;

    LabeledPoint point;
    point.features.resize(spec_.dim);
    for (Index f = 0; f < spec_.dim; ++f)
      point.features(f) = base + shift + spec_.stddev * normal_(gen_);
    point.label = blob;
    ++emitted_;
    return point;
  }

private:
  BlobStreamSpec spec_;
  std::mt19937_64 gen_;
  NormalSampler normal_;
  long emitted_ = 0;
};

inline BlobStreamSpec BlobStreamSpec::parse(const std::string& text) {
  BlobStreamSpec spec;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("synthetic spec: expected key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "blobs")
        spec.blobs = std::stoi(value);
      else if (key == "dim")
        spec.dim = std::stol(value);
      else if (key == "n")
        spec.records = std::stol(value);
      else if (key == "std")
        spec.stddev = std::stod(value);
      else if (key == "spread")
        spec.spread = std::stod(value);
      else if (key == "drift")
        spec.drift = std::stod(value);
      else if (key == "birth")
        spec.birth_at = std::stol(value);
      else
        throw std::invalid_argument("synthetic spec: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("synthetic spec: bad value for '" + key + "'");
    }
  }
  return spec;
}

inline std::string BlobStreamSpec::to_string() const {
  std::ostringstream out;
  out << "blobs=" << blobs << ",dim=" << dim << ",n=" << records << ",std=" << stddev
      << ",spread=" << spread << ",drift=" << drift << ",birth=" << birth_at;
  return out.str();
}

}  // namespace streamfuzz
