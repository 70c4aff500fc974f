#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "hanfuse/error.hpp"

namespace hanfuse {

// Column-format labeled sentences, BIO scheme: one "character TAB tag" per
// line, blank line between sentences.
struct LabeledSentence {
  std::u32string chars;
  std::vector<std::string> tags;
};

struct LabeledCorpus {
  std::vector<LabeledSentence> sentences;

  size_t size() const { return sentences.size(); }
};

LabeledCorpus load_corpus(const std::string& path);
void save_corpus(const LabeledCorpus& corpus, const std::string& path);

// true for O, B-X, I-X with non-empty X
bool is_valid_tag(const std::string& tag);

struct EntitySpan {
  int start = 0;  // inclusive
  int end = 0;    // inclusive
  std::string type;

  bool operator==(const EntitySpan&) const = default;
  bool operator<(const EntitySpan& o) const {
    return std::tie(start, end, type) < std::tie(o.start, o.end, o.type);
  }
};

struct SpanExtraction {
  std::vector<EntitySpan> spans;
  int repairs = 0;  // I-X promoted to B-X (dangling or type switch)
};

SpanExtraction extract_spans(const std::vector<std::string>& tags);

// Renders spans back to BIO tags (inverse of extract_spans on well-formed
// input).
std::vector<std::string> spans_to_tags(const std::vector<EntitySpan>& spans, int length);

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long tp = 0;
  long predicted = 0;
  long gold = 0;
  long repairs = 0;
};

// Entity-level micro metrics over exactly matching (start, end, type) spans.
Metrics micro_metrics(const LabeledCorpus& gold,
                      const std::vector<std::vector<std::string>>& predicted);

}  // namespace hanfuse
