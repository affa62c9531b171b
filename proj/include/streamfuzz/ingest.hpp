#pragma once

// KDD-CUP'99-style CSV ingestion: 41 features (3 categorical, one-hot encoded)
// plus an attack label with an optional trailing period. Input may be plain
// text or gzip; malformed lines are skipped and counted, never fatal.

#include "streamfuzz/metrics.hpp"
#include "streamfuzz/stream.hpp"
#include "streamfuzz/types.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace streamfuzz {

inline constexpr int kKddFieldCount = 42;       // 41 features + label
inline constexpr int kKddNumericFeatures = 38;  // categorical: protocol_type, service, flag

// Class codes (fixed configuration, constant per run).
inline constexpr int kClassNormal = 0;
inline constexpr int kClassDos = 1;
inline constexpr int kClassProbe = 2;
inline constexpr int kClassR2l = 3;
inline constexpr int kClassU2r = 4;

int class_code_from_name(const std::string& name);  // kUnknownClass if not a class name
const char* class_name(int code);

struct RawRecord {
  std::string protocol;
  std::string service;
  std::string flag;
  std::vector<double> numeric;  // 38 values in original field order
  std::string label;            // trailing period stripped
};

class MalformedRecordError : public std::runtime_error {
public:
  explicit MalformedRecordError(const std::string& why)
      : std::runtime_error("malformed record: " + why) {}
};

/// Split a KDD line into a RawRecord. Throws MalformedRecordError on a wrong
/// field count or an unparseable numeric field.
RawRecord parse_record(const std::string& line);

struct CategoricalVocab {
  std::vector<std::string> protocol;
  std::vector<std::string> service;
  std::vector<std::string> flag;
};

/// The published KDD'99 value sets (3 protocols, 70 services, 11 flags).
const CategoricalVocab& kdd_default_vocab();

/// One-hot encoder with a frozen vocabulary. Unseen categorical values map to
/// an all-zeros block and bump the warning counter.
class Encoder {
public:
  explicit Encoder(CategoricalVocab vocab);

  Index dimension() const { return dimension_; }
  long unseen_count() const { return unseen_count_; }

  VectorXd encode(const RawRecord& record);

private:
  CategoricalVocab vocab_;
  std::map<std::string, Index> protocol_index_;
  std::map<std::string, Index> service_index_;
  std::map<std::string, Index> flag_index_;
  Index dimension_ = 0;
  long unseen_count_ = 0;
};

struct LabelMap {
  std::map<std::string, int> classes;  // attack/normal name -> class code

  /// kUnknownClass for names outside the map.
  int map(const std::string& name) const {
    const auto it = classes.find(name);
    return it == classes.end() ? kUnknownClass : it->second;
  }
};

/// Embedded copy of data/kdd_label_map.csv (normal + the 22 attack names).
LabelMap kdd_default_label_map();

/// Two-column CSV: attack_name,class_name. Blank lines and '#' comments skipped.
LabelMap load_label_map(const std::string& path);

struct LabeledPoint {
  VectorXd features;
  int label = kUnknownClass;
};

/// Line iterator over a plain-text or gzip file (zlib reads both).
class LineReader {
public:
  explicit LineReader(const std::string& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  bool ok() const { return file_ != nullptr; }
  std::optional<std::string> next();

private:
  void* file_ = nullptr;  // gzFile
};

/// Record source over a KDD CSV file: parse + encode + label, skipping and
/// counting malformed lines.
class KddSource {
public:
  KddSource(const std::string& path, LabelMap label_map,
            CategoricalVocab vocab = kdd_default_vocab());

  bool ok() const { return reader_ && reader_->ok(); }
  Index dimension() const { return encoder_.dimension(); }
  std::optional<LabeledPoint> next();

  long line_count() const { return line_count_; }
  long malformed_count() const { return malformed_count_; }
  long unknown_label_count() const { return unknown_label_count_; }
  long unseen_categorical_count() const { return encoder_.unseen_count(); }

private:
  std::unique_ptr<LineReader> reader_;
  LabelMap label_map_;
  Encoder encoder_;
  long line_count_ = 0;
  long malformed_count_ = 0;
  long unknown_label_count_ = 0;
};

/// Fixed-size chunking of any record source with a
/// `std::optional<LabeledPoint> next()` method. The final partial chunk is
/// emitted as-is; indices start at 1.
template <typename Source>
class ChunkStream {
public:
  ChunkStream(Source& source, Index chunk_size) : source_(&source), size_(chunk_size) {
    if (chunk_size < 1) throw std::invalid_argument("chunk size must be >= 1");
  }

  std::optional<Chunk<double>> next() {
    std::vector<LabeledPoint> rows;
    rows.reserve(static_cast<std::size_t>(size_));
    while (static_cast<Index>(rows.size()) < size_) {
      auto point = source_->next();
      if (!point) break;
      rows.push_back(std::move(*point));
    }
    if (rows.empty()) return std::nullopt;

    Chunk<double> chunk;
    chunk.index = next_index_++;
    chunk.points.resize(static_cast<Index>(rows.size()), rows.front().features.size());
    chunk.labels.resize(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      chunk.points.row(static_cast<Index>(j)) = rows[j].features.transpose();
      chunk.labels[j] = rows[j].label;
    }
    return chunk;
  }

private:
  Source* source_;
  Index size_;
  long next_index_ = 1;
};

/// FNV-1a over the chunk's payload; used by the bench harness to prove both
/// algorithms consumed identical chunk contents.
std::uint64_t chunk_checksum(const Chunk<double>& chunk);

}  // namespace streamfuzz
