#include "hanfuse/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "hanfuse/text.hpp"

namespace hanfuse {

bool is_valid_tag(const std::string& tag) {
  if (tag == "O") return true;
  if (tag.size() < 3) return false;
  if (tag[0] != 'B' && tag[0] != 'I') return false;
  return tag[1] == '-';
}

LabeledCorpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);

  LabeledCorpus corpus;
  LabeledSentence current;
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (!current.chars.empty()) {
      corpus.sentences.push_back(std::move(current));
      current = LabeledSentence{};
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2)
      fail(ErrorKind::MalformedLine,
           path + ":" + std::to_string(lineno) + ": expected character<TAB>tag");
    std::u32string token = decode_utf8(fields[0]);
    if (token.size() != 1)
      fail(ErrorKind::MalformedLine,
           path + ":" + std::to_string(lineno) + ": token must be a single character");
    std::string tag(fields[1]);
    if (!is_valid_tag(tag))
      fail(ErrorKind::UnknownTagFormat,
           path + ":" + std::to_string(lineno) + ": tag \"" + tag + "\" is not O/B-X/I-X");
    current.chars.push_back(token[0]);
    current.tags.push_back(std::move(tag));
  }
  flush();
  if (corpus.sentences.empty()) fail(ErrorKind::EmptyCorpus, path + " has no sentences");
  return corpus;
}

void save_corpus(const LabeledCorpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    const LabeledSentence& sent = corpus.sentences[s];
    for (size_t i = 0; i < sent.chars.size(); ++i)
      out << encode_utf8(sent.chars[i]) << '\t' << sent.tags[i] << '\n';
    out << '\n';
  }
}

SpanExtraction extract_spans(const std::vector<std::string>& tags) {
  SpanExtraction result;
  int open_start = -1;
  std::string open_type;
  auto close = [&](int end) {
    if (open_start >= 0) {
      result.spans.push_back(EntitySpan{open_start, end, open_type});
      open_start = -1;
      open_type.clear();
    }
  };
  for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
    const std::string& tag = tags[i];
    if (tag == "O" || !is_valid_tag(tag)) {
      close(i - 1);
      continue;
    }
    std::string type = tag.substr(2);
    if (tag[0] == 'B') {
      close(i - 1);
      open_start = i;
      open_type = type;
    } else {  // I-X
      if (open_start >= 0 && open_type == type) continue;
      // dangling I-X or type switch: repair as if it were B-X
      close(i - 1);
      ++result.repairs;
      open_start = i;
      open_type = type;
    }
  }
  close(static_cast<int>(tags.size()) - 1);
  return result;
}

std::vector<std::string> spans_to_tags(const std::vector<EntitySpan>& spans, int length) {
  std::vector<std::string> tags(length, "O");
  for (const EntitySpan& span : spans) {
    tags[span.start] = "B-" + span.type;
    for (int i = span.start + 1; i <= span.end; ++i) tags[i] = "I-" + span.type;
  }
  return tags;
}

Metrics micro_metrics(const LabeledCorpus& gold,
                      const std::vector<std::vector<std::string>>& predicted) {
  if (gold.sentences.size() != predicted.size())
    fail(ErrorKind::LengthMismatch,
         "gold has " + std::to_string(gold.sentences.size()) + " sentences, predictions " +
             std::to_string(predicted.size()));

  Metrics m;
  for (size_t s = 0; s < predicted.size(); ++s) {
    const LabeledSentence& sent = gold.sentences[s];
    if (sent.tags.size() != predicted[s].size())
      fail(ErrorKind::LengthMismatch,
           "sentence " + std::to_string(s) + ": gold length " +
               std::to_string(sent.tags.size()) + " vs predicted " +
               std::to_string(predicted[s].size()));

    SpanExtraction g = extract_spans(sent.tags);
    SpanExtraction p = extract_spans(predicted[s]);
    m.repairs += g.repairs + p.repairs;
    m.gold += static_cast<long>(g.spans.size());
    m.predicted += static_cast<long>(p.spans.size());

    std::set<EntitySpan> gold_set(g.spans.begin(), g.spans.end());
    for (const EntitySpan& span : p.spans)
      if (gold_set.count(span)) ++m.tp;
  }

  m.precision = m.predicted == 0 ? 1.0 : static_cast<double>(m.tp) / m.predicted;
  m.recall = m.gold == 0 ? 1.0 : static_cast<double>(m.tp) / m.gold;
  m.f1 = (m.precision + m.recall) == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

}  // namespace hanfuse
