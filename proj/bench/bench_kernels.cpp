// Serial-reference vs OpenMP comparisons for the data-parallel kernels:
// neighbor distance scans, training batch gradients, and corpus tagging.

#include <benchmark/benchmark.h>

#include "hanfuse/augment.hpp"
#include "hanfuse/tagger.hpp"
#include "oracles.hpp"

using namespace hanfuse;

namespace {

const oracles::Fixture& fx() { return oracles::fixture(); }

struct TrainingSetup {
  oracles::SyntheticData data;
  TaggerModel model;
  std::vector<FusedSequence> features;
  std::vector<std::vector<int>> tags;
  std::vector<std::u32string> sentences;

  TrainingSetup() : model(make_model()) {
    oracles::SyntheticSpec spec;
    spec.sentences = 96;
    spec.gazetteer_size = 20;
    spec.seed = 5;
    data = oracles::make_synthetic(fx().inventory, spec);
    TagSet tag_set = TagSet::from_corpus(data.corpus);
    model.config.tags = tag_set;
    Rng rng(9);
    model = TaggerModel::create(model.config, rng);
    for (const LabeledSentence& sentence : data.corpus.sentences) {
      features.push_back(embed_for_model(sentence.chars, model, fx().feat, Mode::Lenient));
      std::vector<int> ids;
      for (const std::string& tag : sentence.tags) ids.push_back(tag_set.id(tag));
      tags.push_back(std::move(ids));
      sentences.push_back(sentence.chars);
    }
  }

  static TaggerModel make_model() {
    TaggerConfig config;
    config.semantic_dim = fx().semantic.dimension;
    config.hidden = 100;
    config.tags = TagSet::from_labels({"O", "B-PER", "I-PER"});
    Rng rng(1);
    return TaggerModel::create(config, rng);
  }
};

TrainingSetup& setup() {
  static TrainingSetup s;
  return s;
}

// full-vocabulary scale (~2e4 characters), not just the sample table
void BM_DistanceScan(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  SpaceIndex index;
  index.space = FeatureSpace::Semantic;
  index.embeddings = Matrix(20000, 64);
  Rng rng(123);
  for (double& v : index.embeddings.data) v = rng.uniform(-1.0, 1.0);
  std::vector<double> out(index.embeddings.rows);
  for (auto _ : state) {
    for (int q = 0; q < 32; ++q)
      distance_scan(index, index.embeddings.row(q * 101), out.data(), exec);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_BatchGradient(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  TrainingSetup& s = setup();
  const int batch = 12;
  std::vector<std::vector<double>> slot_grads(batch);
  std::vector<double> total(s.model.layout.total, 0.0);
  for (auto _ : state) {
    parallel_for_dynamic(batch, exec, [&](int j) {
      slot_grads[j].assign(s.model.layout.total, 0.0);
      Rng rng = Rng::substream(3, j);
      sentence_loss_grad(s.model, s.features[j], s.tags[j], true, &rng, slot_grads[j]);
    });
    std::fill(total.begin(), total.end(), 0.0);
    for (int j = 0; j < batch; ++j)
      for (size_t i = 0; i < total.size(); ++i) total[i] += slot_grads[j][i];
    benchmark::DoNotOptimize(total.data());
  }
}

void BM_TagCorpus(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  TrainingSetup& s = setup();
  for (auto _ : state) {
    auto predictions = predict_corpus(s.model, s.sentences, fx().feat, exec);
    benchmark::DoNotOptimize(predictions.data());
  }
}

void BM_Augment(benchmark::State& state) {
  Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
  TrainingSetup& s = setup();
  AugmentConfig config;
  config.probability = 0.5;
  config.seed = 11;
  for (auto _ : state) {
    AugmentResult result =
        substitute_corpus(s.data.corpus, fx().inventory, fx().feat, config, exec);
    benchmark::DoNotOptimize(result.records.data());
  }
}

}  // namespace

BENCHMARK(BM_DistanceScan)->Arg(0)->Arg(1)->ArgNames({"parallel"});
BENCHMARK(BM_BatchGradient)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TagCorpus)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Augment)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
