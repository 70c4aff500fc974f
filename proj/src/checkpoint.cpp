#include "hanfuse/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace hanfuse {

namespace {

constexpr char kMagic[4] = {'H', 'F', 'N', 'M'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
  uint64_t bits = std::bit_cast<uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) fail(ErrorKind::BadCheckpoint, "truncated checkpoint");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) fail(ErrorKind::BadCheckpoint, "truncated checkpoint");
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string get_string(std::istream& in) {
  uint32_t len = get_u32(in);
  if (len > (1u << 20)) fail(ErrorKind::BadCheckpoint, "implausible string length");
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) fail(ErrorKind::BadCheckpoint, "truncated checkpoint");
  return s;
}

uint32_t strategy_code(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Concat: return 0;
    case StrategyKind::ConcatLinear: return 1;
    case StrategyKind::MultiBranch: return 2;
  }
  return 0;
}

StrategyKind decode_strategy(uint32_t code) {
  switch (code) {
    case 0: return StrategyKind::Concat;
    case 1: return StrategyKind::ConcatLinear;
    case 2: return StrategyKind::MultiBranch;
  }
  fail(ErrorKind::BadCheckpoint, "unknown strategy code " + std::to_string(code));
}

}  // namespace

void save_model(const TaggerModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);

  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, strategy_code(model.config.fusion.kind));
  uint32_t feature_mask = (model.config.fusion.features.semantic ? 1u : 0u) |
                          (model.config.fusion.features.glyph ? 2u : 0u) |
                          (model.config.fusion.features.phonetic ? 4u : 0u);
  put_u32(out, feature_mask);
  put_u32(out, static_cast<uint32_t>(model.config.fusion.linear_out));
  put_u32(out, static_cast<uint32_t>(model.config.semantic_dim));
  put_u32(out, static_cast<uint32_t>(model.config.hidden));
  put_f64(out, model.config.dropout);

  put_u32(out, static_cast<uint32_t>(model.config.tags.size()));
  for (const std::string& label : model.config.tags.labels) put_string(out, label);

  put_u32(out, static_cast<uint32_t>(model.layout.segments.size()));
  for (const ParamSegment& seg : model.layout.segments) {
    put_string(out, seg.name);
    put_u32(out, static_cast<uint32_t>(seg.rows));
    put_u32(out, static_cast<uint32_t>(seg.cols));
    const double* p = model.params.data() + seg.offset;
    for (size_t i = 0; i < static_cast<size_t>(seg.rows) * seg.cols; ++i)
      put_f64(out, p[i]);
  }
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

TaggerModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    fail(ErrorKind::BadCheckpoint, path + " is not a hanfuse model file");
  uint32_t version = get_u32(in);
  if (version != kVersion)
    fail(ErrorKind::BadCheckpoint, "unsupported checkpoint version " + std::to_string(version));

  TaggerConfig config;
  config.fusion.kind = decode_strategy(get_u32(in));
  uint32_t feature_mask = get_u32(in);
  config.fusion.features.semantic = feature_mask & 1u;
  config.fusion.features.glyph = feature_mask & 2u;
  config.fusion.features.phonetic = feature_mask & 4u;
  config.fusion.linear_out = static_cast<int>(get_u32(in));
  config.semantic_dim = static_cast<int>(get_u32(in));
  config.hidden = static_cast<int>(get_u32(in));
  config.dropout = get_f64(in);
  if (config.fusion.features.count() == 0)
    fail(ErrorKind::BadCheckpoint, "checkpoint selects no features");
  if (config.hidden <= 0) fail(ErrorKind::BadCheckpoint, "non-positive hidden size");

  uint32_t tag_count = get_u32(in);
  std::vector<std::string> labels;
  labels.reserve(tag_count);
  for (uint32_t i = 0; i < tag_count; ++i) labels.push_back(get_string(in));
  try {
    config.tags = TagSet::from_labels(std::move(labels));
  } catch (const Error& e) {
    fail(ErrorKind::BadCheckpoint, std::string("bad tag set: ") + e.what());
  }

  // rebuild the expected layout, then require the file to match it exactly
  Rng rng(0);
  TaggerModel model = TaggerModel::create(config, rng);

  uint32_t seg_count = get_u32(in);
  if (seg_count != model.layout.segments.size())
    fail(ErrorKind::BadCheckpoint,
         "expected " + std::to_string(model.layout.segments.size()) + " segments, file has " +
             std::to_string(seg_count));
  for (uint32_t s = 0; s < seg_count; ++s) {
    std::string name = get_string(in);
    const ParamSegment& seg = model.layout.segments[s];
    if (name != seg.name)
      fail(ErrorKind::BadCheckpoint,
           "segment " + std::to_string(s) + " is \"" + name + "\", expected \"" +
               seg.name + "\"");
    uint32_t rows = get_u32(in), cols = get_u32(in);
    if (rows != static_cast<uint32_t>(seg.rows) || cols != static_cast<uint32_t>(seg.cols))
      fail(ErrorKind::BadCheckpoint,
           "segment \"" + name + "\" has shape " + std::to_string(rows) + "x" +
               std::to_string(cols) + ", expected " + std::to_string(seg.rows) + "x" +
               std::to_string(seg.cols));
    double* p = model.params.data() + seg.offset;
    for (size_t i = 0; i < static_cast<size_t>(seg.rows) * seg.cols; ++i)
      p[i] = get_f64(in);
  }
  return model;
}

}  // namespace hanfuse
