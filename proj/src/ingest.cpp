#include "streamfuzz/ingest.hpp"

#include <zlib.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace streamfuzz {

namespace {

// Categorical feature positions within the 41-feature KDD record.
constexpr int kProtocolField = 1;
constexpr int kServiceField = 2;
constexpr int kFlagField = 3;

double parse_numeric(const std::string& field) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw MalformedRecordError("unparseable numeric field '" + field + "'");
  if (!std::isfinite(value)) throw MalformedRecordError("non-finite numeric field");
  return value;
}

std::string trim(const std::string& s) {
  std::size_t first = 0, last = s.size();
  while (first < last && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
  return s.substr(first, last - first);
}

}  // namespace

RawRecord parse_record(const std::string& line) {
  if (line.empty()) throw MalformedRecordError("empty line");

  std::vector<std::string> fields;
  fields.reserve(kKddFieldCount);
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (static_cast<int>(fields.size()) != kKddFieldCount)
    throw MalformedRecordError("expected 42 fields, got " + std::to_string(fields.size()));

  RawRecord record;
  record.numeric.reserve(kKddNumericFeatures);
  for (int f = 0; f < kKddFieldCount - 1; ++f) {
    if (f == kProtocolField)
      record.protocol = fields[static_cast<std::size_t>(f)];
    else if (f == kServiceField)
      record.service = fields[static_cast<std::size_t>(f)];
    else if (f == kFlagField)
      record.flag = fields[static_cast<std::size_t>(f)];
    else
      record.numeric.push_back(parse_numeric(fields[static_cast<std::size_t>(f)]));
  }

  record.label = trim(fields.back());
  if (!record.label.empty() && record.label.back() == '.') record.label.pop_back();
  return record;
}

Encoder::Encoder(CategoricalVocab vocab) : vocab_(std::move(vocab)) {
  Index i = 0;
  for (const auto& v : vocab_.protocol) protocol_index_[v] = i++;
  i = 0;
  for (const auto& v : vocab_.service) service_index_[v] = i++;
  i = 0;
  for (const auto& v : vocab_.flag) flag_index_[v] = i++;
  dimension_ = kKddNumericFeatures +
               static_cast<Index>(vocab_.protocol.size() + vocab_.service.size() +
                                  vocab_.flag.size());
}

VectorXd Encoder::encode(const RawRecord& record) {
  if (static_cast<int>(record.numeric.size()) != kKddNumericFeatures)
    throw MalformedRecordError("wrong numeric feature count");

  VectorXd out = VectorXd::Zero(dimension_);
  Index at = 0;

  // Original field order: duration, then the three one-hot blocks, then the
  // remaining numerics.
  out(at++) = record.numeric[0];

  auto hot = [&](const std::map<std::string, Index>& index, const std::string& value,
                 std::size_t size) {
    const auto it = index.find(value);
    if (it == index.end())
      ++unseen_count_;  // frozen vocab: unseen value stays an all-zeros block
    else
      out(at + it->second) = 1.0;
    at += static_cast<Index>(size);
  };
  hot(protocol_index_, record.protocol, vocab_.protocol.size());
  hot(service_index_, record.service, vocab_.service.size());
  hot(flag_index_, record.flag, vocab_.flag.size());

  for (int f = 1; f < kKddNumericFeatures; ++f) out(at++) = record.numeric[static_cast<std::size_t>(f)];
  return out;
}

LabelMap load_label_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label map: " + path);

  LabelMap map;
  std::string line;
  while (std::getline(in, line)) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto comma = text.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("label map line missing comma: " + text);
    const std::string name = trim(text.substr(0, comma));
    const std::string cls = trim(text.substr(comma + 1));
    const int code = class_code_from_name(cls);
    if (code == kUnknownClass) throw std::runtime_error("label map: unknown class '" + cls + "'");
    map.classes[name] = code;
  }
  if (map.classes.empty()) throw std::runtime_error("label map is empty: " + path);
  return map;
}

LineReader::LineReader(const std::string& path) {
  file_ = gzopen(path.c_str(), "rb");
}

LineReader::~LineReader() {
  if (file_ != nullptr) gzclose(static_cast<gzFile>(file_));
}

std::optional<std::string> LineReader::next() {
  if (file_ == nullptr) return std::nullopt;
  std::string line;
  char buffer[8192];
  for (;;) {
    if (gzgets(static_cast<gzFile>(file_), buffer, sizeof(buffer)) == nullptr) {
      if (line.empty()) return std::nullopt;
      break;
    }
    line += buffer;
    if (!line.empty() && line.back() == '\n') {
      line.pop_back();
      break;
    }
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

KddSource::KddSource(const std::string& path, LabelMap label_map, CategoricalVocab vocab)
    : reader_(std::make_unique<LineReader>(path)),
      label_map_(std::move(label_map)),
      encoder_(std::move(vocab)) {}

std::optional<LabeledPoint> KddSource::next() {
  for (;;) {
    auto line = reader_->next();
    if (!line) return std::nullopt;
    if (line->empty()) continue;
    ++line_count_;
    try {
      const RawRecord record = parse_record(*line);
      LabeledPoint point;
      point.features = encoder_.encode(record);
      point.label = label_map_.map(record.label);
      if (point.label == kUnknownClass) ++unknown_label_count_;
      return point;
    } catch (const MalformedRecordError&) {
      ++malformed_count_;
    }
  }
}

std::uint64_t chunk_checksum(const Chunk<double>& chunk) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      hash ^= p[i];
      hash *= 0x100000001b3ULL;
    }
  };

  const std::int64_t index = chunk.index;
  const std::int64_t rows = chunk.points.rows();
  const std::int64_t cols = chunk.points.cols();
  mix(&index, sizeof index);
  mix(&rows, sizeof rows);
  mix(&cols, sizeof cols);
  for (Index j = 0; j < rows; ++j)
    for (Index f = 0; f < cols; ++f) {
      const double v = chunk.points(j, f);
      mix(&v, sizeof v);
    }
  for (int label : chunk.labels) mix(&label, sizeof label);
  return hash;
}

}  // namespace streamfuzz
