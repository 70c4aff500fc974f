#include "doctest.h"
#include "hanfuse/fusion.hpp"
#include "oracles.hpp"

using namespace hanfuse;

TEST_CASE("concat produces [semantic | glyph | phonetic] rows") {
  const oracles::Fixture& fx = oracles::fixture();
  int d_s = fx.semantic.dimension;
  FusionSpec spec;  // Concat, all features

  FusedSequence fused = embed_sentence(U"草早", fx.feat, spec, nullptr, Mode::Strict);
  CHECK(fused.matrix.rows == 2);
  CHECK(fused.matrix.cols == d_s + 64);

  // block recovery at offsets [0,d_s), [d_s,d_s+25), [d_s+25,d_s+64)
  for (int row = 0; row < 2; ++row) {
    char32_t ch = fused.sentence[row];
    std::vector<double> sem = fx.feat.encode(ch, FeatureSpace::Semantic, Mode::Strict);
    std::vector<double> gly = fx.feat.encode(ch, FeatureSpace::Glyph, Mode::Strict);
    std::vector<double> pho = fx.feat.encode(ch, FeatureSpace::Phonetic, Mode::Strict);
    const double* r = fused.matrix.row(row);
    for (int i = 0; i < d_s; ++i) CHECK(r[i] == sem[i]);
    for (int i = 0; i < 25; ++i) CHECK(r[d_s + i] == gly[i]);
    for (int i = 0; i < 39; ++i) CHECK(r[d_s + 25 + i] == pho[i]);
  }

  // the pair differs in the semantic and glyph blocks and phonetic dim 26 only
  const double* cao = fused.matrix.row(0);
  const double* zao = fused.matrix.row(1);
  int phonetic_base = d_s + 25;
  for (int i = phonetic_base; i < fused.matrix.cols; ++i) {
    if (i == phonetic_base + PhoneticVector::kWeightDim) {
      CHECK(cao[i] != zao[i]);
    } else {
      CHECK(cao[i] == zao[i]);
    }
  }
}

TEST_CASE("identity-padded linear layer reproduces concat") {
  const oracles::Fixture& fx = oracles::fixture();
  int d = concat_dim(FeatureSet{}, fx.semantic.dimension);

  ConcatLinearParams params;
  params.weights = Matrix(d, d);
  for (int i = 0; i < d; ++i) params.weights.at(i, i) = 1.0;
  params.bias.assign(d, 0.0);

  FusionSpec concat_spec;
  FusionSpec linear_spec;
  linear_spec.kind = StrategyKind::ConcatLinear;
  linear_spec.linear_out = d;

  FusedSequence a = embed_sentence(U"上海浦东", fx.feat, concat_spec, nullptr, Mode::Lenient);
  FusedSequence b = embed_sentence(U"上海浦东", fx.feat, linear_spec, &params, Mode::Lenient);
  CHECK(a.matrix == b.matrix);
}

TEST_CASE("linear fusion depends on every input block") {
  const oracles::Fixture& fx = oracles::fixture();
  int d_s = fx.semantic.dimension;
  int d = d_s + 64;
  Rng rng(5);
  Matrix w(16, d);
  for (double& x : w.data) x = rng.uniform(-1.0, 1.0);

  FusedSequence base = embed_sentence(U"海", fx.feat, FusionSpec{}, nullptr, Mode::Strict);
  auto apply = [&](const Matrix& input) {
    Matrix out(input.rows, w.rows);
    for (int i = 0; i < input.rows; ++i)
      matvec(ConstTensorView{w.data.data(), w.rows, w.cols}, input.row(i), out.row(i));
    return out;
  };
  Matrix reference = apply(base.matrix);

  // perturb one entry inside each block; the output must move
  const int probes[3] = {0, d_s + 3, d_s + 25 + 5};
  for (int probe : probes) {
    Matrix perturbed = base.matrix;
    perturbed.at(0, probe) += 0.5;
    CHECK(apply(perturbed) != reference);
  }
}

TEST_CASE("multi-branch embedding keeps the parts separate") {
  const oracles::Fixture& fx = oracles::fixture();
  FusionSpec spec;
  spec.kind = StrategyKind::MultiBranch;
  FusedSequence fused = embed_sentence(U"浦东", fx.feat, spec, nullptr, Mode::Lenient);
  CHECK(fused.matrix.rows == 0);
  REQUIRE(fused.parts.size() == 3);
  CHECK(fused.parts[0].cols == fx.semantic.dimension);
  CHECK(fused.parts[1].cols == 25);
  CHECK(fused.parts[2].cols == 39);
  for (const Matrix& part : fused.parts) CHECK(part.rows == 2);
}

TEST_CASE("feature subsets drop blocks while preserving order") {
  const oracles::Fixture& fx = oracles::fixture();
  FusionSpec spec;
  spec.features = parse_feature_set("glyph,phonetic");
  FusedSequence fused = embed_sentence(U"海", fx.feat, spec, nullptr, Mode::Strict);
  CHECK(fused.matrix.cols == 64);
  std::vector<double> gly = fx.feat.encode(U'海', FeatureSpace::Glyph, Mode::Strict);
  for (int i = 0; i < 25; ++i) CHECK(fused.matrix.at(0, i) == gly[i]);

  FusionSpec pure;
  pure.features = parse_feature_set("semantic");
  FusedSequence sem_only = embed_sentence(U"海", fx.feat, pure, nullptr, Mode::Strict);
  CHECK(sem_only.matrix.cols == fx.semantic.dimension);

  CHECK_THROWS_AS(parse_feature_set(""), Error);
  CHECK_THROWS_AS(parse_feature_set("glyphs"), Error);
}

TEST_CASE("lenient mode zeroes only the missing blocks") {
  const oracles::Fixture& fx = oracles::fixture();
  // find an inventory character without a semantic vector
  char32_t no_vec = 0;
  for (char32_t ch : fx.inventory.characters)
    if (!fx.inventory.coverage.at(ch).has_semantic) {
      no_vec = ch;
      break;
    }
  REQUIRE(no_vec != 0);

  FusedSequence fused =
      embed_sentence(std::u32string(1, no_vec), fx.feat, FusionSpec{}, nullptr, Mode::Lenient);
  int d_s = fx.semantic.dimension;
  for (int i = 0; i < d_s; ++i) CHECK(fused.matrix.at(0, i) == 0.0);
  double rest = 0.0;
  for (int i = d_s; i < fused.matrix.cols; ++i) rest += std::abs(fused.matrix.at(0, i));
  CHECK(rest > 0.0);  // glyph and phonetic blocks are real

  CHECK_THROWS_AS(
      embed_sentence(std::u32string(1, no_vec), fx.feat, FusionSpec{}, nullptr, Mode::Strict),
      Error);
  CHECK_THROWS_AS(embed_sentence(U"", fx.feat, FusionSpec{}, nullptr, Mode::Lenient), Error);
}
