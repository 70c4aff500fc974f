#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "hanfuse/evaluation.hpp"
#include "hanfuse/rng.hpp"

using namespace hanfuse;

namespace {

std::string write_tmp(const std::string& content) {
  static int counter = 0;
  std::string path = "tmp_corpus_" + std::to_string(counter++) + ".conll";
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("corpus loading") {
  std::string path = write_tmp("上\tB-LOC\n海\tI-LOC\n\n他\tO\n\n\n");
  LabeledCorpus corpus = load_corpus(path);
  REQUIRE(corpus.sentences.size() == 2);
  CHECK(corpus.sentences[0].chars == U"上海");
  CHECK(corpus.sentences[0].tags == std::vector<std::string>{"B-LOC", "I-LOC"});
  CHECK(corpus.sentences[1].chars == U"他");
  std::remove(path.c_str());

  std::string empty = write_tmp("\n\n");
  CHECK_THROWS_AS(load_corpus(empty), Error);
  std::remove(empty.c_str());

  std::string bad_tag = write_tmp("上\tX-LOC\n");
  CHECK_THROWS_AS(load_corpus(bad_tag), Error);
  std::remove(bad_tag.c_str());

  std::string no_tab = write_tmp("上 B-LOC\n");
  CHECK_THROWS_AS(load_corpus(no_tab), Error);
  std::remove(no_tab.c_str());

  std::string multi_char = write_tmp("上海\tB-LOC\n");
  CHECK_THROWS_AS(load_corpus(multi_char), Error);
  std::remove(multi_char.c_str());
}

TEST_CASE("corpus round-trips through save_corpus") {
  LabeledCorpus corpus;
  corpus.sentences.push_back({U"上海人", {"B-LOC", "I-LOC", "O"}});
  corpus.sentences.push_back({U"好", {"O"}});
  save_corpus(corpus, "tmp_roundtrip.conll");
  LabeledCorpus loaded = load_corpus("tmp_roundtrip.conll");
  REQUIRE(loaded.sentences.size() == 2);
  CHECK(loaded.sentences[0].chars == corpus.sentences[0].chars);
  CHECK(loaded.sentences[0].tags == corpus.sentences[0].tags);
  std::remove("tmp_roundtrip.conll");
}

TEST_CASE("span extraction and the repair policy") {
  SpanExtraction a = extract_spans({"B-PER", "I-PER", "O"});
  CHECK(a.spans == std::vector<EntitySpan>{{0, 1, "PER"}});
  CHECK(a.repairs == 0);

  CHECK(extract_spans({"O", "O", "O"}).spans.empty());

  SpanExtraction dangling = extract_spans({"I-LOC", "I-LOC"});
  CHECK(dangling.spans == std::vector<EntitySpan>{{0, 1, "LOC"}});
  CHECK(dangling.repairs == 1);

  SpanExtraction type_switch = extract_spans({"B-PER", "I-LOC", "O"});
  CHECK(type_switch.spans == std::vector<EntitySpan>{{0, 0, "PER"}, {1, 1, "LOC"}});
  CHECK(type_switch.repairs == 1);

  SpanExtraction adjacent = extract_spans({"B-PER", "B-PER"});
  CHECK(adjacent.spans == std::vector<EntitySpan>{{0, 0, "PER"}, {1, 1, "PER"}});
  CHECK(adjacent.repairs == 0);

  SpanExtraction tail = extract_spans({"O", "B-ORG", "I-ORG"});
  CHECK(tail.spans == std::vector<EntitySpan>{{1, 2, "ORG"}});
}

TEST_CASE("spans render back to the original well-formed tags") {
  Rng rng(7);
  const char* types[2] = {"PER", "LOC"};
  for (int trial = 0; trial < 50; ++trial) {
    // random well-formed sequence
    int n = 1 + static_cast<int>(rng.below(12));
    std::vector<std::string> tags(n, "O");
    int i = 0;
    while (i < n) {
      if (rng.uniform() < 0.4) {
        std::string type = types[rng.below(2)];
        int len = 1 + static_cast<int>(rng.below(3));
        tags[i] = "B-" + type;
        for (int k = 1; k < len && i + k < n; ++k) tags[i + k] = "I-" + type;
        i += len;
      } else {
        ++i;
      }
    }
    SpanExtraction extraction = extract_spans(tags);
    CHECK(extraction.repairs == 0);
    CHECK(spans_to_tags(extraction.spans, n) == tags);
  }
}

TEST_CASE("micro metrics arithmetic") {
  LabeledCorpus gold;
  gold.sentences.push_back({U"上海中学", {"B-LOC", "I-LOC", "B-ORG", "I-ORG"}});

  SUBCASE("perfect prediction") {
    Metrics m = micro_metrics(gold, {{"B-LOC", "I-LOC", "B-ORG", "I-ORG"}});
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
    CHECK(m.tp == 2);
  }

  SUBCASE("one recovered, one invented") {
    Metrics m = micro_metrics(gold, {{"B-LOC", "I-LOC", "O", "B-ORG"}});
    CHECK(m.tp == 1);
    CHECK(m.predicted == 2);
    CHECK(m.gold == 2);
    CHECK(m.precision == 0.5);
    CHECK(m.recall == 0.5);
    CHECK(m.f1 == 0.5);
  }

  SUBCASE("no predicted spans: vacuous precision, zero recall") {
    Metrics m = micro_metrics(gold, {{"O", "O", "O", "O"}});
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
  }

  SUBCASE("boundary mismatch does not count") {
    Metrics m = micro_metrics(gold, {{"B-LOC", "O", "B-ORG", "I-ORG"}});
    CHECK(m.tp == 1);  // only the ORG span matches exactly
  }

  SUBCASE("length mismatches are errors") {
    CHECK_THROWS_AS(micro_metrics(gold, {{"O"}}), Error);
    CHECK_THROWS_AS(micro_metrics(gold, {}), Error);
  }
}

TEST_CASE("metrics are invariant under sentence permutation") {
  LabeledCorpus gold;
  gold.sentences.push_back({U"上海", {"B-LOC", "I-LOC"}});
  gold.sentences.push_back({U"他们", {"O", "O"}});
  gold.sentences.push_back({U"伞兵", {"B-PER", "I-PER"}});
  std::vector<std::vector<std::string>> pred = {
      {"B-LOC", "I-LOC"}, {"B-PER", "O"}, {"O", "O"}};

  Metrics base = micro_metrics(gold, pred);

  LabeledCorpus permuted;
  std::vector<std::vector<std::string>> pred_permuted;
  for (int i : {2, 0, 1}) {
    permuted.sentences.push_back(gold.sentences[i]);
    pred_permuted.push_back(pred[i]);
  }
  Metrics shuffled = micro_metrics(permuted, pred_permuted);
  CHECK(base.f1 == shuffled.f1);
  CHECK(base.tp == shuffled.tp);
  CHECK(base.precision == shuffled.precision);
}

TEST_CASE("f1 is monotone in true positives") {
  auto f1_of = [](long tp, long predicted, long gold) {
    double p = predicted == 0 ? 1.0 : double(tp) / predicted;
    double r = gold == 0 ? 1.0 : double(tp) / gold;
    return (p + r) == 0 ? 0.0 : 2 * p * r / (p + r);
  };
  for (long tp = 0; tp < 10; ++tp)
    CHECK(f1_of(tp, 12, 10) < f1_of(tp + 1, 12, 10));
}
