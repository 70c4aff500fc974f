#include "hanfuse/tagger.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

#include "hanfuse/text.hpp"

namespace hanfuse {

// ---------------------------------------------------------------------------
// TagSet

TagSet TagSet::from_labels(std::vector<std::string> labels) {
  TagSet set;
  set.labels = std::move(labels);
  bool has_o = false;
  for (size_t i = 0; i < set.labels.size(); ++i) {
    const std::string& label = set.labels[i];
    if (!is_valid_tag(label))
      fail(ErrorKind::UnknownTagFormat, "label \"" + label + "\" is not O/B-X/I-X");
    if (label == "O") has_o = true;
    if (!set.index.emplace(label, static_cast<int>(i)).second)
      fail(ErrorKind::UnknownTagFormat, "duplicate label \"" + label + "\"");
  }
  if (!has_o) fail(ErrorKind::UnknownTagFormat, "tag set must contain O");
  for (const std::string& label : set.labels)
    if (label[0] == 'I' && !set.index.count("B" + label.substr(1)))
      fail(ErrorKind::UnknownTagFormat, "label \"" + label + "\" has no matching B tag");
  return set;
}

TagSet TagSet::from_corpus(const LabeledCorpus& corpus) {
  std::set<std::string> types;
  for (const LabeledSentence& sentence : corpus.sentences)
    for (const std::string& tag : sentence.tags)
      if (tag != "O") types.insert(tag.substr(2));
  std::vector<std::string> labels{"O"};
  for (const std::string& type : types) {
    labels.push_back("B-" + type);
    labels.push_back("I-" + type);
  }
  return from_labels(std::move(labels));
}

int TagSet::id(const std::string& tag) const {
  auto it = index.find(tag);
  if (it == index.end())
    fail(ErrorKind::TagNotInTagSet, "tag \"" + tag + "\" is not in the tag set");
  return it->second;
}

// ---------------------------------------------------------------------------
// ParamLayout

size_t ParamLayout::add(const std::string& name, int rows, int cols) {
  ParamSegment seg{name, rows, cols, total};
  segments.push_back(seg);
  total += static_cast<size_t>(rows) * cols;
  return seg.offset;
}

const ParamSegment& ParamLayout::find(const std::string& name) const {
  for (const ParamSegment& seg : segments)
    if (seg.name == name) return seg;
  fail(ErrorKind::BadCheckpoint, "unknown parameter segment \"" + name + "\"");
}

TensorView ParamLayout::view(std::vector<double>& data, const std::string& name) const {
  const ParamSegment& seg = find(name);
  return TensorView{data.data() + seg.offset, seg.rows, seg.cols};
}

ConstTensorView ParamLayout::view(const std::vector<double>& data,
                                  const std::string& name) const {
  const ParamSegment& seg = find(name);
  return ConstTensorView{data.data() + seg.offset, seg.rows, seg.cols};
}

// ---------------------------------------------------------------------------
// TaggerModel

int TaggerModel::branch_count() const {
  return config.fusion.kind == StrategyKind::MultiBranch ? config.fusion.features.count()
                                                         : 1;
}

std::vector<int> TaggerModel::branch_input_dims() const {
  const FusionSpec& fusion = config.fusion;
  if (fusion.kind == StrategyKind::MultiBranch) {
    std::vector<int> dims;
    if (fusion.features.semantic) dims.push_back(config.semantic_dim);
    if (fusion.features.glyph) dims.push_back(GlyphVector::kDim);
    if (fusion.features.phonetic) dims.push_back(PhoneticVector::kDim);
    return dims;
  }
  int d = concat_dim(fusion.features, config.semantic_dim);
  if (fusion.kind == StrategyKind::ConcatLinear)
    return {fusion.linear_out > 0 ? fusion.linear_out : d};
  return {d};
}

namespace {

std::string branch_seg(int branch, const char* suffix) {
  return "b" + std::to_string(branch) + "." + suffix;
}

}  // namespace

TaggerModel TaggerModel::create(const TaggerConfig& config, Rng& rng) {
  TaggerModel model;
  model.config = config;
  if (config.fusion.features.semantic && config.semantic_dim <= 0)
    fail(ErrorKind::ShapeMismatch, "semantic feature selected but semantic_dim not set");
  if (config.tags.size() < 1)
    fail(ErrorKind::ShapeMismatch, "tagger needs a non-empty tag set");

  ParamLayout& layout = model.layout;
  int T = config.tags.size();
  int h = config.hidden;

  if (config.fusion.kind == StrategyKind::ConcatLinear) {
    int in = concat_dim(config.fusion.features, config.semantic_dim);
    int out = config.fusion.linear_out > 0 ? config.fusion.linear_out : in;
    layout.add("fusion.w", out, in);
    layout.add("fusion.b", out, 1);
  }

  std::vector<int> dims = model.branch_input_dims();
  for (int b = 0; b < static_cast<int>(dims.size()); ++b) {
    layout.add(branch_seg(b, "fw.wx"), 4 * h, dims[b]);
    layout.add(branch_seg(b, "fw.wh"), 4 * h, h);
    layout.add(branch_seg(b, "fw.bias"), 4 * h, 1);
    layout.add(branch_seg(b, "bw.wx"), 4 * h, dims[b]);
    layout.add(branch_seg(b, "bw.wh"), 4 * h, h);
    layout.add(branch_seg(b, "bw.bias"), 4 * h, 1);
    layout.add(branch_seg(b, "proj.w"), T, 2 * h);
    layout.add(branch_seg(b, "proj.b"), T, 1);
  }
  if (config.fusion.kind == StrategyKind::MultiBranch) {
    layout.add("comb.w", T, static_cast<int>(dims.size()) * T);
    layout.add("comb.b", T, 1);
  }
  layout.add("crf.trans", T, T);
  layout.add("crf.start", T, 1);
  layout.add("crf.end", T, 1);

  model.params.assign(layout.total, 0.0);
  for (const ParamSegment& seg : layout.segments) {
    bool is_weight = seg.name.ends_with(".w") || seg.name.ends_with(".wx") ||
                     seg.name.ends_with(".wh");
    if (!is_weight) continue;  // biases and CRF scores start at zero
    double scale = 1.0 / std::sqrt(static_cast<double>(seg.cols));
    double* p = model.params.data() + seg.offset;
    for (size_t i = 0; i < static_cast<size_t>(seg.rows) * seg.cols; ++i)
      p[i] = rng.uniform(-scale, scale);
  }
  return model;
}

BiLstmView TaggerModel::lstm_view(int branch) const {
  BiLstmView v;
  v.fw.wx = view(branch_seg(branch, "fw.wx"));
  v.fw.wh = view(branch_seg(branch, "fw.wh"));
  v.fw.bias = view(branch_seg(branch, "fw.bias")).data;
  v.fw.hidden = config.hidden;
  v.bw.wx = view(branch_seg(branch, "bw.wx"));
  v.bw.wh = view(branch_seg(branch, "bw.wh"));
  v.bw.bias = view(branch_seg(branch, "bw.bias")).data;
  v.bw.hidden = config.hidden;
  return v;
}

CrfView TaggerModel::crf_view() const {
  CrfView crf;
  crf.transitions = view("crf.trans");
  crf.start = view("crf.start").data;
  crf.end = view("crf.end").data;
  crf.tags = tag_count();
  return crf;
}

// ---------------------------------------------------------------------------
// Emissions: forward with trace, then backward

FusedSequence embed_for_model(std::u32string_view sentence, const TaggerModel& model,
                              const Featurizer& feat, Mode mode) {
  FusionSpec spec = model.config.fusion;
  // the ConcatLinear affine is part of the model, not of the static features
  if (spec.kind == StrategyKind::ConcatLinear) spec.kind = StrategyKind::Concat;
  return embed_sentence(sentence, feat, spec, nullptr, mode);
}

Matrix dropout_mask(int rows, int cols, double rate, Rng& rng) {
  Matrix mask(rows, cols);
  double keep_scale = 1.0 / (1.0 - rate);
  for (double& m : mask.data) m = rng.uniform() < rate ? 0.0 : keep_scale;
  return mask;
}

namespace {

struct BranchTrace {
  Matrix input;        // post-dropout branch input
  Matrix input_mask;   // inverted-dropout factors; empty when not training
  BiLstmCache cache;
  Matrix hidden;       // raw BiLSTM output
  Matrix hidden_mask;
  Matrix hidden_dropped;
  Matrix emissions;  // n x T
};

struct EmissionTrace {
  const Matrix* concat_raw = nullptr;  // ConcatLinear input (borrowed)
  Matrix fused;                        // ConcatLinear affine output
  std::vector<BranchTrace> branches;
  Matrix emissions;
};

Matrix apply_mask(const Matrix& x, const Matrix& mask) {
  Matrix out = x;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] *= mask.data[i];
  return out;
}

void check_features(const FusedSequence& features, const TaggerModel& model) {
  const FusionSpec& fusion = model.config.fusion;
  if (fusion.kind == StrategyKind::MultiBranch) {
    if (static_cast<int>(features.parts.size()) != model.branch_count())
      fail(ErrorKind::StrategyMismatch,
           "multi-lstm model expects " + std::to_string(model.branch_count()) +
               " feature parts, got " + std::to_string(features.parts.size()));
    return;
  }
  if (features.matrix.rows == 0)
    fail(ErrorKind::StrategyMismatch, "features carry no fused matrix");
  int expect = concat_dim(fusion.features, model.config.semantic_dim);
  if (features.matrix.cols != expect)
    fail(ErrorKind::ShapeMismatch,
         "fused matrix has " + std::to_string(features.matrix.cols) +
             " columns, model expects " + std::to_string(expect));
}

void forward_emissions(const FusedSequence& features, const TaggerModel& model,
                       bool training, Rng* rng, EmissionTrace& trace) {
  check_features(features, model);
  const FusionSpec& fusion = model.config.fusion;
  double rate = training ? model.config.dropout : 0.0;
  bool masking = rate > 0.0;
  if (training && masking && !rng)
    fail(ErrorKind::StrategyMismatch, "training-mode emissions need an RNG for dropout");

  int branches = model.branch_count();
  trace.branches.resize(branches);
  int n = fusion.kind == StrategyKind::MultiBranch ? features.parts[0].rows
                                                   : features.matrix.rows;
  int T = model.tag_count();

  for (int b = 0; b < branches; ++b) {
    BranchTrace& bt = trace.branches[b];

    const Matrix* raw = nullptr;
    if (fusion.kind == StrategyKind::MultiBranch) {
      raw = &features.parts[b];
    } else if (fusion.kind == StrategyKind::ConcatLinear) {
      trace.concat_raw = &features.matrix;
      ConstTensorView w = model.view("fusion.w");
      trace.fused = affine_rows(features.matrix, w, model.view("fusion.b").data);
      raw = &trace.fused;
    } else {
      raw = &features.matrix;
    }

    if (masking) {
      bt.input_mask = dropout_mask(raw->rows, raw->cols, rate, *rng);
      bt.input = apply_mask(*raw, bt.input_mask);
    } else {
      bt.input = *raw;
    }

    bt.hidden = lstm_forward(bt.input, model.lstm_view(b), &bt.cache);
    if (masking) {
      bt.hidden_mask = dropout_mask(bt.hidden.rows, bt.hidden.cols, rate, *rng);
      bt.hidden_dropped = apply_mask(bt.hidden, bt.hidden_mask);
    } else {
      bt.hidden_dropped = bt.hidden;
    }

    bt.emissions = affine_rows(bt.hidden_dropped, model.view(branch_seg(b, "proj.w")),
                               model.view(branch_seg(b, "proj.b")).data);
  }

  if (fusion.kind != StrategyKind::MultiBranch) {
    trace.emissions = trace.branches[0].emissions;
    return;
  }

  // stack branch emissions and mix them down to T scores per position
  Matrix stacked(n, branches * T);
  for (int t = 0; t < n; ++t)
    for (int b = 0; b < branches; ++b)
      std::copy(trace.branches[b].emissions.row(t),
                trace.branches[b].emissions.row(t) + T, stacked.row(t) + b * T);
  trace.emissions =
      affine_rows(stacked, model.view("comb.w"), model.view("comb.b").data);
}

// demissions: d(loss)/d(final emissions); accumulates into grad.
void backward_emissions(const FusedSequence& /*features*/, const TaggerModel& model,
                        const EmissionTrace& trace, const Matrix& demissions,
                        std::vector<double>& grad) {
  const FusionSpec& fusion = model.config.fusion;
  const ParamLayout& layout = model.layout;
  int branches = model.branch_count();
  int n = demissions.rows;
  int T = model.tag_count();
  bool masking = !trace.branches[0].input_mask.data.empty();

  std::vector<Matrix> dbranch_em(branches);
  if (fusion.kind == StrategyKind::MultiBranch) {
    Matrix stacked(n, branches * T);
    for (int t = 0; t < n; ++t)
      for (int b = 0; b < branches; ++b)
        std::copy(trace.branches[b].emissions.row(t),
                  trace.branches[b].emissions.row(t) + T, stacked.row(t) + b * T);

    TensorView gw = layout.view(grad, "comb.w");
    TensorView gb = layout.view(grad, "comb.b");
    ConstTensorView w = model.view("comb.w");
    Matrix dstacked(n, branches * T);
    for (int t = 0; t < n; ++t) {
      outer_add(gw, demissions.row(t), stacked.row(t));
      for (int j = 0; j < T; ++j) gb.data[j] += demissions.at(t, j);
      matvec_transpose_add(w, demissions.row(t), dstacked.row(t));
    }
    for (int b = 0; b < branches; ++b) {
      dbranch_em[b] = Matrix(n, T);
      for (int t = 0; t < n; ++t)
        std::copy(dstacked.row(t) + b * T, dstacked.row(t) + (b + 1) * T,
                  dbranch_em[b].row(t));
    }
  } else {
    dbranch_em[0] = demissions;
  }

  for (int b = 0; b < branches; ++b) {
    const BranchTrace& bt = trace.branches[b];
    TensorView gproj_w = layout.view(grad, branch_seg(b, "proj.w"));
    TensorView gproj_b = layout.view(grad, branch_seg(b, "proj.b"));
    ConstTensorView proj_w = model.view(branch_seg(b, "proj.w"));

    Matrix dhidden(n, bt.hidden.cols);
    for (int t = 0; t < n; ++t) {
      outer_add(gproj_w, dbranch_em[b].row(t), bt.hidden_dropped.row(t));
      for (int j = 0; j < T; ++j) gproj_b.data[j] += dbranch_em[b].at(t, j);
      matvec_transpose_add(proj_w, dbranch_em[b].row(t), dhidden.row(t));
    }
    if (masking)
      for (size_t i = 0; i < dhidden.data.size(); ++i)
        dhidden.data[i] *= bt.hidden_mask.data[i];

    BiLstmGradView glstm;
    glstm.fw.wx = layout.view(grad, branch_seg(b, "fw.wx"));
    glstm.fw.wh = layout.view(grad, branch_seg(b, "fw.wh"));
    glstm.fw.bias = layout.view(grad, branch_seg(b, "fw.bias")).data;
    glstm.bw.wx = layout.view(grad, branch_seg(b, "bw.wx"));
    glstm.bw.wh = layout.view(grad, branch_seg(b, "bw.wh"));
    glstm.bw.bias = layout.view(grad, branch_seg(b, "bw.bias")).data;

    Matrix dinput(bt.input.rows, bt.input.cols);
    lstm_backward(bt.input, model.lstm_view(b), bt.cache, dhidden, dinput, glstm);

    if (masking)
      for (size_t i = 0; i < dinput.data.size(); ++i)
        dinput.data[i] *= bt.input_mask.data[i];

    if (fusion.kind == StrategyKind::ConcatLinear) {
      TensorView gfuse_w = layout.view(grad, "fusion.w");
      TensorView gfuse_b = layout.view(grad, "fusion.b");
      for (int t = 0; t < n; ++t) {
        outer_add(gfuse_w, dinput.row(t), trace.concat_raw->row(t));
        for (int j = 0; j < gfuse_b.rows; ++j) gfuse_b.data[j] += dinput.at(t, j);
      }
    }
    // the static embeddings below the fused input are not trained
  }
}

}  // namespace

Matrix model_emissions(const FusedSequence& features, const TaggerModel& model,
                       bool training, Rng* rng) {
  EmissionTrace trace;
  forward_emissions(features, model, training, rng, trace);
  return trace.emissions;
}

double sentence_loss_grad(const TaggerModel& model, const FusedSequence& features,
                          const std::vector<int>& tags, bool training, Rng* rng,
                          std::vector<double>& grad) {
  EmissionTrace trace;
  forward_emissions(features, model, training, rng, trace);

  CrfGradView crf_grad;
  crf_grad.transitions = model.layout.view(grad, "crf.trans");
  crf_grad.start = model.layout.view(grad, "crf.start").data;
  crf_grad.end = model.layout.view(grad, "crf.end").data;

  Matrix demissions(trace.emissions.rows, trace.emissions.cols);
  double ll = crf_log_likelihood_grad(trace.emissions, tags, model.crf_view(),
                                      demissions, crf_grad);
  backward_emissions(features, model, trace, demissions, grad);
  return -ll;
}

double sentence_loss(const TaggerModel& model, const FusedSequence& features,
                     const std::vector<int>& tags) {
  Matrix emissions = model_emissions(features, model, /*training=*/false);
  return -crf_log_likelihood(emissions, tags, model.crf_view());
}

// ---------------------------------------------------------------------------
// Training

namespace {

struct Sample {
  FusedSequence features;
  std::vector<int> tags;
};

std::vector<Sample> prepare_samples(const LabeledCorpus& corpus, const TaggerModel& model,
                                    const Featurizer& feat) {
  std::vector<Sample> samples(corpus.sentences.size());
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    const LabeledSentence& sentence = corpus.sentences[i];
    samples[i].features = embed_for_model(sentence.chars, model, feat, Mode::Lenient);
    samples[i].tags.reserve(sentence.tags.size());
    for (const std::string& tag : sentence.tags)
      samples[i].tags.push_back(model.config.tags.id(tag));
  }
  return samples;
}

// One RNG stream per (epoch, sentence slot) so that dropout draws do not
// depend on thread scheduling.
uint64_t dropout_stream(int epoch, size_t position) {
  return (static_cast<uint64_t>(epoch + 1) << 32) ^ static_cast<uint64_t>(position);
}

}  // namespace

TrainResult train(const TaggerModel& init, const LabeledCorpus& train_corpus,
                  const LabeledCorpus& dev_corpus, const Featurizer& feat,
                  const TrainConfig& config) {
  if (train_corpus.sentences.empty()) fail(ErrorKind::EmptyCorpus, "empty training corpus");
  if (dev_corpus.sentences.empty()) fail(ErrorKind::EmptyCorpus, "empty dev corpus");

  TaggerModel model = init;
  model.config.dropout = config.dropout;

  std::vector<Sample> train_samples = prepare_samples(train_corpus, model, feat);
  std::vector<Sample> dev_samples = prepare_samples(dev_corpus, model, feat);

  size_t P = model.layout.total;
  std::vector<double> grad(P, 0.0), m(P, 0.0), v(P, 0.0);
  std::vector<std::vector<double>> slot_grads(config.batch_size);
  std::vector<double> slot_losses(config.batch_size, 0.0);
  long adam_step = 0;

  Rng shuffle_rng = Rng::substream(config.seed, 0xF15E);
  std::vector<size_t> order(train_samples.size());
  std::iota(order.begin(), order.end(), size_t{0});

  TrainResult result;
  result.model = model;
  int since_improved = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;

    for (size_t batch_start = 0; batch_start < order.size();
         batch_start += config.batch_size) {
      size_t batch_size =
          std::min<size_t>(config.batch_size, order.size() - batch_start);

      parallel_for_dynamic(static_cast<int>(batch_size), config.exec, [&](int j) {
        std::vector<double>& g = slot_grads[j];
        g.assign(P, 0.0);
        const Sample& sample = train_samples[order[batch_start + j]];
        Rng rng = Rng::substream(config.seed, dropout_stream(epoch, batch_start + j));
        slot_losses[j] =
            sentence_loss_grad(model, sample.features, sample.tags,
                               /*training=*/true, &rng, g);
      });

      // fixed-order accumulation keeps the result independent of scheduling
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (size_t j = 0; j < batch_size; ++j) {
        batch_loss += slot_losses[j];
        const std::vector<double>& g = slot_grads[j];
        for (size_t i = 0; i < P; ++i) grad[i] += g[i];
      }
      double inv = 1.0 / static_cast<double>(batch_size);
      batch_loss *= inv;
      if (!std::isfinite(batch_loss))
        fail(ErrorKind::NumericFailure, "training loss diverged (epoch " +
                                            std::to_string(epoch) + ")");
      epoch_loss += batch_loss * static_cast<double>(batch_size);

      ++adam_step;
      double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(adam_step));
      double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(adam_step));
      for (size_t i = 0; i < P; ++i) {
        double gi = grad[i] * inv;
        m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * gi;
        v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * gi * gi;
        model.params[i] -=
            config.learning_rate * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + config.epsilon);
      }
    }

    // dev loss without dropout
    std::vector<double> dev_losses(dev_samples.size(), 0.0);
    parallel_for_dynamic(static_cast<int>(dev_samples.size()), config.exec, [&](int i) {
      dev_losses[i] = sentence_loss(model, dev_samples[i].features, dev_samples[i].tags);
    });
    double dev_loss =
        std::accumulate(dev_losses.begin(), dev_losses.end(), 0.0) /
        static_cast<double>(dev_samples.size());

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss / static_cast<double>(train_samples.size());
    stats.dev_loss = dev_loss;
    stats.improved = dev_loss < result.best_dev_loss;
    result.epochs.push_back(stats);

    if (config.log)
      (*config.log) << "epoch " << epoch << " train_loss " << stats.train_loss
                    << " dev_loss " << stats.dev_loss
                    << (stats.improved ? " *" : "") << "\n";

    if (stats.improved) {
      result.best_dev_loss = dev_loss;
      result.best_epoch = epoch;
      result.model = model;
      since_improved = 0;
    } else if (++since_improved >= config.patience) {
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Inference

std::vector<std::string> predict(const TaggerModel& model, std::u32string_view sentence,
                                 const Featurizer& feat) {
  FusedSequence features = embed_for_model(sentence, model, feat, Mode::Lenient);
  Matrix emissions = model_emissions(features, model, /*training=*/false);
  auto [path, score] = viterbi_decode(emissions, model.crf_view());
  std::vector<std::string> tags;
  tags.reserve(path.size());
  for (int id : path) tags.push_back(model.config.tags.labels[id]);
  return tags;
}

std::vector<std::vector<std::string>> predict_corpus(
    const TaggerModel& model, const std::vector<std::u32string>& sentences,
    const Featurizer& feat, Exec exec) {
  std::vector<std::vector<std::string>> out(sentences.size());
  parallel_for_dynamic(static_cast<int>(sentences.size()), exec, [&](int i) {
    out[i] = predict(model, sentences[i], feat);
  });
  return out;
}

}  // namespace hanfuse
