#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hanfuse/crf.hpp"
#include "hanfuse/evaluation.hpp"
#include "hanfuse/fusion.hpp"
#include "hanfuse/lstm.hpp"
#include "hanfuse/parallel.hpp"
#include "hanfuse/rng.hpp"

namespace hanfuse {

struct TagSet {
  std::vector<std::string> labels;
  std::map<std::string, int> index;

  // Validates that O is present and every I-X has a matching B-X.
  static TagSet from_labels(std::vector<std::string> labels);
  // O first, then B-X/I-X pairs with types sorted.
  static TagSet from_corpus(const LabeledCorpus& corpus);

  int id(const std::string& tag) const;  // throws TagNotInTagSet
  int size() const { return static_cast<int>(labels.size()); }
  bool operator==(const TagSet& other) const { return labels == other.labels; }
};

struct TaggerConfig {
  FusionSpec fusion;
  int semantic_dim = 0;
  int hidden = 100;  // per direction; concatenated BiLSTM output is 2x this
  double dropout = 0.4;
  TagSet tags;
};

struct ParamSegment {
  std::string name;
  int rows = 0;
  int cols = 0;
  size_t offset = 0;
};

// Every trainable tensor lives in one flat vector; gradients, Adam moments
// and checkpoints all share this layout.
struct ParamLayout {
  std::vector<ParamSegment> segments;
  size_t total = 0;

  size_t add(const std::string& name, int rows, int cols);
  const ParamSegment& find(const std::string& name) const;
  TensorView view(std::vector<double>& data, const std::string& name) const;
  ConstTensorView view(const std::vector<double>& data, const std::string& name) const;
};

struct TaggerModel {
  TaggerConfig config;
  ParamLayout layout;
  std::vector<double> params;

  // Weights start uniform in +-1/sqrt(fan_in); biases and CRF scores at 0.
  static TaggerModel create(const TaggerConfig& config, Rng& rng);

  int tag_count() const { return config.tags.size(); }
  int branch_count() const;
  std::vector<int> branch_input_dims() const;

  TensorView view(const std::string& name) { return layout.view(params, name); }
  ConstTensorView view(const std::string& name) const { return layout.view(params, name); }
  BiLstmView lstm_view(int branch) const;
  CrfView crf_view() const;
};

// Embeds a sentence into the static features the model consumes: the raw
// concatenation for Concat/ConcatLinear (the fusion layer itself is applied
// inside the model so its gradient flows), per-part matrices for MultiBranch.
FusedSequence embed_for_model(std::u32string_view sentence, const TaggerModel& model,
                              const Featurizer& feat, Mode mode);

// Inverted dropout: entries are 0 with probability rate, else 1/(1-rate),
// so masked values keep their expectation.
Matrix dropout_mask(int rows, int cols, double rate, Rng& rng);

// Emission scores (n x T). With training=true, inverted dropout is applied
// to embedding rows and BiLSTM output rows using draws from rng.
Matrix model_emissions(const FusedSequence& features, const TaggerModel& model,
                       bool training, Rng* rng = nullptr);

// Negative log-likelihood of one sentence plus its gradient, accumulated
// into grad (layout-sized). Dropout as in model_emissions.
double sentence_loss_grad(const TaggerModel& model, const FusedSequence& features,
                          const std::vector<int>& tags, bool training, Rng* rng,
                          std::vector<double>& grad);

// Loss only, never applies dropout (used for dev evaluation).
double sentence_loss(const TaggerModel& model, const FusedSequence& features,
                     const std::vector<int>& tags);

struct TrainConfig {
  int batch_size = 12;
  int max_epochs = 60;
  double learning_rate = 2e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double dropout = 0.4;
  int patience = 5;  // epochs of non-decreasing dev loss tolerated
  uint64_t seed = 0;
  Exec exec = Exec::Parallel;
  std::ostream* log = nullptr;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double dev_loss = 0.0;
  bool improved = false;
};

struct TrainResult {
  TaggerModel model;  // snapshot with the best dev loss
  std::vector<EpochStats> epochs;
  int best_epoch = -1;
  double best_dev_loss = std::numeric_limits<double>::infinity();
};

// Adam on the mean sentence NLL, seeded shuffling per epoch, early stopping
// on dev loss. Deterministic for a fixed seed regardless of exec mode.
TrainResult train(const TaggerModel& init, const LabeledCorpus& train_corpus,
                  const LabeledCorpus& dev_corpus, const Featurizer& feat,
                  const TrainConfig& config);

std::vector<std::string> predict(const TaggerModel& model, std::u32string_view sentence,
                                 const Featurizer& feat);
std::vector<std::vector<std::string>> predict_corpus(
    const TaggerModel& model, const std::vector<std::u32string>& sentences,
    const Featurizer& feat, Exec exec);

}  // namespace hanfuse
