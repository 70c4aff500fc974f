#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hanfuse/matrix.hpp"
#include "hanfuse/similarity.hpp"

namespace hanfuse {

enum class StrategyKind { Concat, ConcatLinear, MultiBranch };

const char* strategy_name(StrategyKind kind);
StrategyKind parse_strategy(const std::string& name);

// Which embedding parts participate, always ordered semantic, glyph,
// phonetic. The full set reproduces the multi-feature embedding; a
// semantic-only set is the "pure" baseline.
struct FeatureSet {
  bool semantic = true;
  bool glyph = true;
  bool phonetic = true;

  int count() const { return int(semantic) + int(glyph) + int(phonetic); }
  std::vector<FeatureSpace> spaces() const;
  std::string describe() const;
};

FeatureSet parse_feature_set(const std::string& csv);

struct FusionSpec {
  StrategyKind kind = StrategyKind::Concat;
  FeatureSet features;
  // ConcatLinear output dimension; 0 means "same as the concatenation".
  int linear_out = 0;
};

// Parameters of the ConcatLinear fusion layer (trained with the model).
struct ConcatLinearParams {
  Matrix weights;  // out_dim x concat_dim
  std::vector<double> bias;
};

struct FusedSequence {
  std::u32string sentence;
  // Concat / ConcatLinear: n x d fused matrix. MultiBranch: empty.
  Matrix matrix;
  // MultiBranch: one n x d_part matrix per active feature (fixed order).
  std::vector<Matrix> parts;
};

// Per-character concatenated dimension for a feature set.
int concat_dim(const FeatureSet& features, int semantic_dim);

FusedSequence embed_sentence(std::u32string_view sentence, const Featurizer& feat,
                             const FusionSpec& spec, const ConcatLinearParams* linear,
                             Mode mode);

// rows of X through an affine map: out.row(i) = W * X.row(i) + b
Matrix affine_rows(const Matrix& x, ConstTensorView weights, const double* bias);

}  // namespace hanfuse
