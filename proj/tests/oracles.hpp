#pragma once

// Independent oracles the tests check the implementation against:
// brute-force path enumeration for the CRF, central finite differences for
// gradients, a full-sort scan for nearest neighbors, plus the shared data
// fixture and a synthetic corpus builder.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hanfuse/augment.hpp"
#include "hanfuse/crf.hpp"
#include "hanfuse/evaluation.hpp"
#include "hanfuse/rng.hpp"
#include "hanfuse/similarity.hpp"
#include "hanfuse/tagger.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// CRF path enumeration

// Visits all T^n tag sequences in lexicographic order.
inline void for_each_path(int n, int T, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> path(n, 0);
  for (;;) {
    fn(path);
    int pos = n - 1;
    while (pos >= 0 && path[pos] == T - 1) path[pos--] = 0;
    if (pos < 0) return;
    ++path[pos];
  }
}

// Path score recomputed from the definition, independent of crf_path_score.
inline double enum_path_score(const hanfuse::Matrix& emissions, const std::vector<int>& tags,
                              hanfuse::CrfView crf) {
  double score = crf.start[tags[0]] + emissions.at(0, tags[0]);
  for (size_t t = 1; t < tags.size(); ++t)
    score += crf.transitions.at(tags[t - 1], tags[t]) +
             emissions.at(static_cast<int>(t), tags[t]);
  return score + crf.end[tags.back()];
}

struct EnumeratedBest {
  std::vector<int> path;
  double score;
};

// Argmax over all paths; lexicographically first on ties.
inline EnumeratedBest enumerate_best_path(const hanfuse::Matrix& emissions,
                                          hanfuse::CrfView crf) {
  EnumeratedBest best;
  best.score = -1e300;
  for_each_path(emissions.rows, crf.tags, [&](const std::vector<int>& path) {
    double s = enum_path_score(emissions, path, crf);
    if (s > best.score) {
      best.score = s;
      best.path = path;
    }
  });
  return best;
}

// ---------------------------------------------------------------------------
// Finite differences

inline double central_difference(const std::function<double()>& loss,
                                 std::vector<double>& theta, size_t i,
                                 double step = 1e-4) {
  double saved = theta[i];
  theta[i] = saved + step;
  double up = loss();
  theta[i] = saved - step;
  double down = loss();
  theta[i] = saved;
  return (up - down) / (2.0 * step);
}

// Relative error with an absolute floor for near-zero components (the
// quadratic FD truncation plus roundoff sits around 1e-8 at step 1e-4).
inline bool gradients_match(double analytic, double numeric, double rel_tol = 1e-3,
                            double abs_floor = 1e-7) {
  double diff = std::abs(analytic - numeric);
  if (diff <= abs_floor) return true;
  return diff <= rel_tol * std::max(std::abs(analytic), std::abs(numeric));
}

// ---------------------------------------------------------------------------
// Nearest-neighbor full sort (recomputes embeddings per query, no SpaceIndex)

inline std::vector<hanfuse::Neighbor> knn_oracle(char32_t query, hanfuse::FeatureSpace space,
                                                 int k,
                                                 const hanfuse::CharacterInventory& inventory,
                                                 const hanfuse::Featurizer& feat) {
  std::vector<double> q = feat.encode(query, space, hanfuse::Mode::Strict);
  std::vector<hanfuse::Neighbor> all;
  for (char32_t ch : inventory.characters) {
    if (ch == query || !feat.encodable(ch, space)) continue;
    std::vector<double> e = feat.encode(ch, space, hanfuse::Mode::Strict);
    double acc = 0.0;
    for (size_t i = 0; i < q.size(); ++i) acc += (q[i] - e[i]) * (q[i] - e[i]);
    all.push_back(hanfuse::Neighbor{ch, std::sqrt(acc)});
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.ch < b.ch;
  });
  all.resize(static_cast<size_t>(k));
  return all;
}

// ---------------------------------------------------------------------------
// Shared data fixture

struct Fixture {
  hanfuse::WubiTable wubi;
  hanfuse::PinyinTable pinyin;
  hanfuse::PhoneticSystem phonetics;
  hanfuse::SemanticTable semantic;
  hanfuse::CharacterInventory inventory;
  hanfuse::Featurizer feat;

  explicit Fixture(const std::string& dir = HANFUSE_TEST_DATA_DIR) {
    wubi = hanfuse::load_wubi_table(dir + "/wubi.tsv");
    pinyin = hanfuse::load_pinyin_table(dir + "/pinyin.tsv");
    phonetics = hanfuse::load_phonetic_system(dir + "/initials.tsv", dir + "/finals.tsv");
    semantic = hanfuse::load_semantic_table(dir + "/vectors.vec");
    inventory = hanfuse::build_inventory(wubi, pinyin, semantic);
    feat.wubi = &wubi;
    feat.pinyin = &pinyin;
    feat.phonetics = &phonetics;
    feat.semantic = &semantic;
  }
};

inline const Fixture& fixture() {
  static Fixture f;
  return f;
}

// ---------------------------------------------------------------------------
// Synthetic corpus builder

struct SyntheticSpec {
  int sentences = 100;
  int gazetteer_size = 20;
  int filler_min = 1;  // filler characters between/around entities
  int filler_max = 5;
  uint64_t seed = 1;
};

struct SyntheticData {
  hanfuse::LabeledCorpus corpus;
  std::vector<std::pair<std::u32string, std::string>> gazetteer;  // entity, type
};

// Entities use one half of the inventory, filler text the other half, so a
// model must key on the entity characters themselves rather than on context.
inline SyntheticData make_synthetic(const hanfuse::CharacterInventory& inventory,
                                    const SyntheticSpec& spec) {
  static const char* kTypes[3] = {"PER", "LOC", "ORG"};
  hanfuse::Rng rng(spec.seed);

  std::vector<char32_t> entity_pool, filler_pool;
  for (size_t i = 0; i < inventory.characters.size(); ++i)
    (i % 2 == 0 ? entity_pool : filler_pool).push_back(inventory.characters[i]);

  SyntheticData data;
  for (int e = 0; e < spec.gazetteer_size; ++e) {
    int len = 2 + static_cast<int>(rng.below(2));  // 2..3 characters
    std::u32string entity;
    for (int i = 0; i < len; ++i)
      entity.push_back(entity_pool[rng.below(entity_pool.size())]);
    data.gazetteer.emplace_back(entity, kTypes[rng.below(3)]);
  }

  int filler_span = spec.filler_max - spec.filler_min + 1;
  for (int s = 0; s < spec.sentences; ++s) {
    hanfuse::LabeledSentence sentence;
    auto add_filler = [&] {
      int len = spec.filler_min + static_cast<int>(rng.below(filler_span));
      for (int i = 0; i < len; ++i) {
        sentence.chars.push_back(filler_pool[rng.below(filler_pool.size())]);
        sentence.tags.push_back("O");
      }
    };
    int entities = 1 + static_cast<int>(rng.below(2));  // 1..2 per sentence
    add_filler();
    for (int e = 0; e < entities; ++e) {
      const auto& [entity, type] = data.gazetteer[rng.below(data.gazetteer.size())];
      sentence.chars += entity;
      sentence.tags.push_back("B-" + type);
      for (size_t i = 1; i < entity.size(); ++i) sentence.tags.push_back("I-" + type);
      add_filler();
    }
    data.corpus.sentences.push_back(std::move(sentence));
  }
  return data;
}

}  // namespace oracles
