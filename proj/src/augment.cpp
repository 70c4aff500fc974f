#include "hanfuse/augment.hpp"

#include <algorithm>
#include <set>

#include "hanfuse/parallel.hpp"
#include "hanfuse/rng.hpp"
#include "hanfuse/text.hpp"

namespace hanfuse {

namespace {

struct SentenceOutcome {
  LabeledSentence substituted;
  bool modified = false;
  std::vector<SubstitutionRecord> records;
  long eligible = 0;
  long uncovered = 0;
  long empty_pools = 0;
  std::set<char32_t> uncovered_chars;
};

}  // namespace

AugmentResult substitute_corpus(const LabeledCorpus& corpus,
                                const CharacterInventory& inventory,
                                const Featurizer& feat, const AugmentConfig& config,
                                Exec exec) {
  if (config.spaces.empty())
    fail(ErrorKind::MalformedLine, "augmentation needs at least one feature space");
  if (config.probability < 0.0 || config.probability > 1.0)
    fail(ErrorKind::MalformedLine, "substitution probability must lie in [0,1]");
  if (config.neighbor_pool_k < 1)
    fail(ErrorKind::MalformedLine, "neighbor pool size must be at least 1");

  // one index per configured space, shared across sentences
  std::vector<SpaceIndex> indices;
  indices.reserve(config.spaces.size());
  for (FeatureSpace space : config.spaces)
    indices.push_back(build_space_index(space, inventory, feat));

  int n_sentences = static_cast<int>(corpus.sentences.size());
  std::vector<SentenceOutcome> outcomes(n_sentences);

  parallel_for_dynamic(n_sentences, exec, [&](int s) {
    const LabeledSentence& sentence = corpus.sentences[s];
    SentenceOutcome& out = outcomes[s];
    out.substituted = sentence;
    Rng rng = Rng::substream(config.seed, static_cast<uint64_t>(s));

    SpanExtraction extraction = extract_spans(sentence.tags);
    for (const EntitySpan& span : extraction.spans) {
      // characters of this entity are excluded as replacement candidates
      std::set<char32_t> entity_chars(sentence.chars.begin() + span.start,
                                      sentence.chars.begin() + span.end + 1);
      for (int pos = span.start; pos <= span.end; ++pos) {
        char32_t original = sentence.chars[pos];
        ++out.eligible;
        if (!inventory.contains(original)) {
          ++out.uncovered;
          out.uncovered_chars.insert(original);
          continue;
        }
        if (rng.uniform() >= config.probability) continue;

        size_t space_idx = config.spaces.size() == 1
                               ? 0
                               : static_cast<size_t>(rng.below(config.spaces.size()));
        const SpaceIndex& index = indices[space_idx];
        int row = index.find(original);
        if (row < 0) {  // not encodable in the chosen space (e.g. no vector)
          ++out.empty_pools;
          continue;
        }
        int k = std::min(config.neighbor_pool_k, index.embeddings.rows - 1);
        if (k < 1) {
          ++out.empty_pools;
          continue;
        }
        NeighborList neighbors = knn(original, k, index);
        std::vector<Neighbor> pool;
        for (const Neighbor& nb : neighbors.neighbors) {
          if (entity_chars.count(nb.ch)) continue;
          if (config.max_distance && nb.distance > *config.max_distance) continue;
          pool.push_back(nb);
        }
        if (pool.empty()) {
          ++out.empty_pools;
          continue;
        }
        const Neighbor& pick = pool[static_cast<size_t>(rng.below(pool.size()))];
        out.substituted.chars[pos] = pick.ch;
        out.modified = true;
        out.records.push_back(SubstitutionRecord{s, pos, original, pick.ch,
                                                 config.spaces[space_idx], pick.distance});
      }
    }
  });

  AugmentResult result;
  std::set<char32_t> uncovered_union;
  for (int s = 0; s < n_sentences; ++s) {
    SentenceOutcome& out = outcomes[s];
    if (out.modified && config.emit_pairs)
      result.corpus.sentences.push_back(corpus.sentences[s]);
    result.corpus.sentences.push_back(std::move(out.substituted));
    result.records.insert(result.records.end(), out.records.begin(), out.records.end());
    result.eligible += out.eligible;
    result.uncovered += out.uncovered;
    result.empty_pools += out.empty_pools;
    uncovered_union.insert(out.uncovered_chars.begin(), out.uncovered_chars.end());
  }
  for (char32_t ch : uncovered_union)
    result.warnings.push_back("entity character " + encode_utf8(ch) +
                              " is not in the inventory; left unchanged");
  return result;
}

}  // namespace hanfuse
