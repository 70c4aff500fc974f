#pragma once

#include <optional>
#include <vector>

#include "hanfuse/evaluation.hpp"
#include "hanfuse/similarity.hpp"

namespace hanfuse {

struct AugmentConfig {
  std::vector<FeatureSpace> spaces{FeatureSpace::Glyph, FeatureSpace::Phonetic};
  double probability = 0.3;  // per entity character
  int neighbor_pool_k = 5;
  std::optional<double> max_distance;
  uint64_t seed = 0;
  bool emit_pairs = false;
};

struct SubstitutionRecord {
  int sentence = 0;  // index into the source corpus
  int position = 0;  // character position inside the sentence
  char32_t original = 0;
  char32_t replacement = 0;
  FeatureSpace space = FeatureSpace::Glyph;
  double distance = 0.0;
};

struct AugmentResult {
  LabeledCorpus corpus;
  std::vector<SubstitutionRecord> records;
  long eligible = 0;        // entity characters seen
  long uncovered = 0;       // skipped: character not in the inventory
  long empty_pools = 0;     // skipped: every candidate filtered out
  std::vector<std::string> warnings;
};

// Replaces entity characters with near neighbors in a randomly chosen
// configured space. Tags are preserved; non-entity characters are never
// touched. Per-sentence RNG substreams make the output identical for the
// serial and parallel paths.
AugmentResult substitute_corpus(const LabeledCorpus& corpus,
                                const CharacterInventory& inventory,
                                const Featurizer& feat, const AugmentConfig& config,
                                Exec exec = Exec::Serial);

}  // namespace hanfuse
