#include <cmath>

#include "doctest.h"
#include "hanfuse/augment.hpp"
#include "oracles.hpp"

using namespace hanfuse;

namespace {

LabeledCorpus demo_corpus(int sentences = 40, uint64_t seed = 4) {
  oracles::SyntheticSpec spec;
  spec.sentences = sentences;
  spec.gazetteer_size = 10;
  spec.seed = seed;
  return oracles::make_synthetic(oracles::fixture().inventory, spec).corpus;
}

bool same_corpus(const LabeledCorpus& a, const LabeledCorpus& b) {
  if (a.sentences.size() != b.sentences.size()) return false;
  for (size_t i = 0; i < a.sentences.size(); ++i)
    if (a.sentences[i].chars != b.sentences[i].chars ||
        a.sentences[i].tags != b.sentences[i].tags)
      return false;
  return true;
}

}  // namespace

TEST_CASE("p = 0 is the identity") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus();
  AugmentConfig config;
  config.probability = 0.0;
  config.seed = 9;
  AugmentResult result = substitute_corpus(corpus, fx.inventory, fx.feat, config);
  CHECK(same_corpus(result.corpus, corpus));
  CHECK(result.records.empty());
}

TEST_CASE("p = 1, k = 1, one space: every entity character gets its nearest neighbor") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus(15);
  AugmentConfig config;
  config.probability = 1.0;
  config.neighbor_pool_k = 1;
  config.spaces = {FeatureSpace::Glyph};
  config.seed = 3;
  AugmentResult result = substitute_corpus(corpus, fx.inventory, fx.feat, config);

  long replaced = 0;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    const LabeledSentence& original = corpus.sentences[s];
    const LabeledSentence& substituted = result.corpus.sentences[s];
    SpanExtraction spans = extract_spans(original.tags);
    for (const EntitySpan& span : spans.spans) {
      for (int pos = span.start; pos <= span.end; ++pos) {
        char32_t before = original.chars[pos];
        char32_t after = substituted.chars[pos];
        if (after == before) continue;  // skipped (pool filtered to empty)
        ++replaced;
        auto nearest = oracles::knn_oracle(before, FeatureSpace::Glyph, 1,
                                           fx.inventory, fx.feat);
        CHECK(after == nearest[0].ch);
      }
    }
  }
  CHECK(replaced > 0);
  CHECK(static_cast<long>(result.records.size()) == replaced);
}

TEST_CASE("tags are preserved and non-entity characters never change") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus(25, /*seed=*/6);
  AugmentConfig config;
  config.probability = 0.7;
  config.seed = 12;
  AugmentResult result = substitute_corpus(corpus, fx.inventory, fx.feat, config);

  REQUIRE(result.corpus.sentences.size() == corpus.sentences.size());
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    const LabeledSentence& original = corpus.sentences[s];
    const LabeledSentence& substituted = result.corpus.sentences[s];
    CHECK(substituted.tags == original.tags);
    for (size_t i = 0; i < original.chars.size(); ++i)
      if (original.tags[i] == "O") CHECK(substituted.chars[i] == original.chars[i]);
  }
}

TEST_CASE("records carry exact distances and in-span positions") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus(20, /*seed=*/8);
  AugmentConfig config;
  config.probability = 0.5;
  config.seed = 21;
  AugmentResult result = substitute_corpus(corpus, fx.inventory, fx.feat, config);

  CHECK(!result.records.empty());
  for (const SubstitutionRecord& record : result.records) {
    CHECK(record.replacement != record.original);
    CHECK(record.distance ==
          distance(record.original, record.replacement, record.space, fx.feat));
    const LabeledSentence& sentence = corpus.sentences[record.sentence];
    CHECK(sentence.tags[record.position] != "O");
    CHECK(result.corpus.sentences[record.sentence].chars[record.position] ==
          record.replacement);
  }
}

TEST_CASE("deterministic for a fixed seed; serial equals parallel") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus(30, /*seed=*/14);
  AugmentConfig config;
  config.probability = 0.4;
  config.seed = 77;

  AugmentResult a = substitute_corpus(corpus, fx.inventory, fx.feat, config, Exec::Serial);
  AugmentResult b = substitute_corpus(corpus, fx.inventory, fx.feat, config, Exec::Serial);
  AugmentResult c = substitute_corpus(corpus, fx.inventory, fx.feat, config, Exec::Parallel);
  CHECK(same_corpus(a.corpus, b.corpus));
  CHECK(same_corpus(a.corpus, c.corpus));
  REQUIRE(a.records.size() == c.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].sentence == c.records[i].sentence);
    CHECK(a.records[i].position == c.records[i].position);
    CHECK(a.records[i].replacement == c.records[i].replacement);
    CHECK(a.records[i].distance == c.records[i].distance);
  }

  config.seed = 78;
  AugmentResult other = substitute_corpus(corpus, fx.inventory, fx.feat, config);
  CHECK(!same_corpus(a.corpus, other.corpus));
}

TEST_CASE("replacement count stays within 3 sigma of the binomial bound") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus(60, /*seed=*/16);
  AugmentConfig config;
  config.probability = 0.3;

  for (uint64_t seed = 0; seed < 10; ++seed) {
    config.seed = seed;
    AugmentResult result = substitute_corpus(corpus, fx.inventory, fx.feat, config);
    double n = static_cast<double>(result.eligible - result.uncovered);
    REQUIRE(n > 100);
    double expected = config.probability * n;
    double sigma = std::sqrt(n * config.probability * (1 - config.probability));
    // empty pools only remove already-drawn replacements
    double low = expected - 3 * sigma - static_cast<double>(result.empty_pools);
    CHECK(static_cast<double>(result.records.size()) >= low);
    CHECK(static_cast<double>(result.records.size()) <= expected + 3 * sigma);
  }
}

TEST_CASE("emit_pairs interleaves originals with modified copies") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus(20, /*seed=*/19);
  AugmentConfig config;
  config.probability = 0.9;
  config.seed = 31;
  config.emit_pairs = true;
  AugmentResult result = substitute_corpus(corpus, fx.inventory, fx.feat, config);

  size_t out_index = 0;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    bool modified = false;
    for (const SubstitutionRecord& record : result.records)
      if (record.sentence == static_cast<int>(s)) modified = true;
    if (modified) {
      CHECK(result.corpus.sentences[out_index].chars == corpus.sentences[s].chars);
      ++out_index;  // original copy first
      CHECK(result.corpus.sentences[out_index].chars != corpus.sentences[s].chars);
    } else {
      CHECK(result.corpus.sentences[out_index].chars == corpus.sentences[s].chars);
    }
    CHECK(result.corpus.sentences[out_index].tags == corpus.sentences[s].tags);
    ++out_index;
  }
  CHECK(out_index == result.corpus.sentences.size());
}

TEST_CASE("max_distance filters the pool down to nothing") {
  const oracles::Fixture& fx = oracles::fixture();
  LabeledCorpus corpus = demo_corpus(10, /*seed=*/22);
  AugmentConfig config;
  config.probability = 1.0;
  config.max_distance = 1e-12;  // nothing is this close in glyph space
  config.spaces = {FeatureSpace::Glyph};
  config.seed = 1;
  AugmentResult result = substitute_corpus(corpus, fx.inventory, fx.feat, config);
  // glyph-identical characters exist only as code collisions; most pools
  // empty out, and skipped characters stay unchanged
  CHECK(result.empty_pools > 0);
  for (size_t s = 0; s < corpus.sentences.size(); ++s)
    for (size_t i = 0; i < corpus.sentences[s].chars.size(); ++i) {
      bool recorded = false;
      for (const SubstitutionRecord& r : result.records)
        if (r.sentence == static_cast<int>(s) && r.position == static_cast<int>(i))
          recorded = true;
      if (!recorded)
        CHECK(result.corpus.sentences[s].chars[i] == corpus.sentences[s].chars[i]);
      else
        CHECK(result.records.size() > 0);  // any survivors must be 0-distance
    }
}
