#include "hanfuse/fusion.hpp"

#include <sstream>

#include "hanfuse/text.hpp"

namespace hanfuse {

const char* strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Concat: return "concat";
    case StrategyKind::ConcatLinear: return "concat-linear";
    case StrategyKind::MultiBranch: return "multi-lstm";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& name) {
  if (name == "concat") return StrategyKind::Concat;
  if (name == "concat-linear") return StrategyKind::ConcatLinear;
  if (name == "multi-lstm") return StrategyKind::MultiBranch;
  fail(ErrorKind::MalformedLine, "unknown fusion strategy \"" + name + "\"");
}

std::vector<FeatureSpace> FeatureSet::spaces() const {
  std::vector<FeatureSpace> out;
  if (semantic) out.push_back(FeatureSpace::Semantic);
  if (glyph) out.push_back(FeatureSpace::Glyph);
  if (phonetic) out.push_back(FeatureSpace::Phonetic);
  return out;
}

std::string FeatureSet::describe() const {
  std::string out;
  for (FeatureSpace s : spaces()) {
    if (!out.empty()) out += ",";
    out += feature_space_name(s);
  }
  return out;
}

FeatureSet parse_feature_set(const std::string& csv) {
  FeatureSet set;
  set.semantic = set.glyph = set.phonetic = false;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    switch (parse_feature_space(item)) {
      case FeatureSpace::Semantic: set.semantic = true; break;
      case FeatureSpace::Glyph: set.glyph = true; break;
      case FeatureSpace::Phonetic: set.phonetic = true; break;
    }
  }
  if (set.count() == 0)
    fail(ErrorKind::MalformedLine, "feature set \"" + csv + "\" selects nothing");
  return set;
}

int concat_dim(const FeatureSet& features, int semantic_dim) {
  int d = 0;
  if (features.semantic) d += semantic_dim;
  if (features.glyph) d += GlyphVector::kDim;
  if (features.phonetic) d += PhoneticVector::kDim;
  return d;
}

Matrix affine_rows(const Matrix& x, ConstTensorView weights, const double* bias) {
  if (weights.cols != x.cols)
    fail(ErrorKind::ShapeMismatch,
         "affine weights expect " + std::to_string(weights.cols) + " columns, input has " +
             std::to_string(x.cols));
  Matrix out(x.rows, weights.rows);
  for (int i = 0; i < x.rows; ++i) {
    matvec(weights, x.row(i), out.row(i));
    if (bias)
      for (int j = 0; j < out.cols; ++j) out.row(i)[j] += bias[j];
  }
  return out;
}

FusedSequence embed_sentence(std::u32string_view sentence, const Featurizer& feat,
                             const FusionSpec& spec, const ConcatLinearParams* linear,
                             Mode mode) {
  if (sentence.empty()) fail(ErrorKind::EmptySentence, "cannot embed an empty sentence");

  FusedSequence out;
  out.sentence = std::u32string(sentence);
  int n = static_cast<int>(sentence.size());
  std::vector<FeatureSpace> spaces = spec.features.spaces();

  if (spec.kind == StrategyKind::MultiBranch) {
    for (FeatureSpace space : spaces) {
      Matrix part(n, feat.dim(space));
      for (int i = 0; i < n; ++i) {
        std::vector<double> row = feat.encode(sentence[i], space, mode);
        std::copy(row.begin(), row.end(), part.row(i));
      }
      out.parts.push_back(std::move(part));
    }
    return out;
  }

  Matrix concat(n, concat_dim(spec.features, feat.dim(FeatureSpace::Semantic)));
  for (int i = 0; i < n; ++i) {
    double* dst = concat.row(i);
    for (FeatureSpace space : spaces) {
      std::vector<double> row = feat.encode(sentence[i], space, mode);
      dst = std::copy(row.begin(), row.end(), dst);
    }
  }

  if (spec.kind == StrategyKind::Concat) {
    out.matrix = std::move(concat);
    return out;
  }

  // ConcatLinear
  if (!linear)
    fail(ErrorKind::StrategyMismatch, "concat-linear embedding needs layer parameters");
  ConstTensorView w{linear->weights.data.data(), linear->weights.rows, linear->weights.cols};
  out.matrix = affine_rows(concat, w, linear->bias.data());
  return out;
}

}  // namespace hanfuse
