// hanfuse: multi-feature Chinese character embeddings, similarity queries,
// substitution-based corpus augmentation, and a BiLSTM+CRF tagger.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hanfuse/augment.hpp"
#include "hanfuse/checkpoint.hpp"
#include "hanfuse/evaluation.hpp"
#include "hanfuse/tagger.hpp"
#include "hanfuse/text.hpp"

using namespace hanfuse;

namespace {

struct DataOptions {
  std::string data_dir;
  std::string wubi, pinyin, initials, finals, vectors;
  bool strict = false;

  std::string resolve(const std::string& explicit_path, const char* filename) const {
    if (!explicit_path.empty()) return explicit_path;
    if (!data_dir.empty()) return data_dir + "/" + filename;
    fail(ErrorKind::IoError,
         std::string("no path for ") + filename +
             " (pass the flag or set HANFUSE_DATA_DIR)");
  }

  Mode mode() const { return strict ? Mode::Strict : Mode::Lenient; }
};

void add_data_flags(CLI::App* cmd, DataOptions& data, bool with_vectors = true) {
  const char* env = std::getenv("HANFUSE_DATA_DIR");
  data.data_dir = env ? env : "";
  cmd->add_option("--data-dir", data.data_dir,
                  "directory holding wubi.tsv, pinyin.tsv, initials.tsv, finals.tsv"
                  " and vectors.vec (default: $HANFUSE_DATA_DIR)");
  cmd->add_option("--wubi", data.wubi, "Five-Strokes code table");
  cmd->add_option("--pinyin", data.pinyin, "pinyin syllable table");
  cmd->add_option("--initials", data.initials, "initial mapping table");
  cmd->add_option("--finals", data.finals, "final mapping table");
  if (with_vectors) cmd->add_option("--vectors", data.vectors, "semantic vector file");
  cmd->add_flag("--strict", data.strict, "fail on unknown characters instead of zeroing");
}

// Loaded tables plus the featurizer over them.
struct Resources {
  WubiTable wubi;
  PinyinTable pinyin;
  PhoneticSystem phonetics;
  SemanticTable semantic;
  CharacterInventory inventory;
  Featurizer feat;
};

void report_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

Resources load_resources(const DataOptions& data, bool need_semantic) {
  Resources r;
  r.wubi = load_wubi_table(data.resolve(data.wubi, "wubi.tsv"));
  r.pinyin = load_pinyin_table(data.resolve(data.pinyin, "pinyin.tsv"));
  r.phonetics = load_phonetic_system(data.resolve(data.initials, "initials.tsv"),
                                     data.resolve(data.finals, "finals.tsv"));
  if (need_semantic)
    r.semantic = load_semantic_table(data.resolve(data.vectors, "vectors.vec"));
  report_warnings(r.wubi.warnings);
  report_warnings(r.pinyin.warnings);
  report_warnings(r.phonetics.initials.warnings);
  report_warnings(r.phonetics.finals.warnings);
  report_warnings(r.semantic.warnings);
  r.inventory = build_inventory(r.wubi, r.pinyin, r.semantic);
  r.feat.wubi = &r.wubi;
  r.feat.pinyin = &r.pinyin;
  r.feat.phonetics = &r.phonetics;
  r.feat.semantic = &r.semantic;
  return r;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// ---------------------------------------------------------------------------

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

int run_inspect(const DataOptions& data) {
  // vectors are optional here: load them if explicitly flagged, or if the
  // data directory happens to have them
  bool need_semantic = !data.vectors.empty();
  if (!need_semantic && !data.data_dir.empty())
    need_semantic = file_exists(data.data_dir + "/vectors.vec");
  Resources r = load_resources(data, need_semantic);
  std::cout << "wubi characters\t" << r.wubi.entries.size() << "\n";
  std::cout << "pinyin characters\t" << r.pinyin.entries.size() << "\n";
  long polyphones = 0;
  for (const auto& [ch, syllables] : r.pinyin.entries)
    if (syllables.size() > 1) ++polyphones;
  std::cout << "polyphones\t" << polyphones << "\n";
  if (r.semantic.dimension > 0)
    std::cout << "semantic vectors\t" << r.semantic.vectors.size() << "\tdimension\t"
              << r.semantic.dimension << "\n";
  std::cout << "inventory\t" << r.inventory.size() << "\n";
  long with_semantic = 0;
  for (char32_t ch : r.inventory.characters)
    if (r.inventory.coverage.at(ch).has_semantic) ++with_semantic;
  std::cout << "semantic coverage\t" << with_semantic << "\t"
            << fmt6(r.inventory.size() ? 100.0 * with_semantic / r.inventory.size() : 0.0)
            << "%\n";
  return 0;
}

int run_encode(const DataOptions& data, const std::string& text, bool glyph_mode,
               bool phonetic_mode, bool fused_mode, const std::string& strategy,
               const std::string& features_csv) {
  std::u32string chars = decode_utf8(text);
  if (chars.empty()) fail(ErrorKind::EmptySentence, "no characters to encode");

  if (glyph_mode) {
    Resources r = load_resources(data, false);
    for (char32_t ch : chars) {
      GlyphVector vec = encode_glyph(ch, r.wubi, data.mode());
      const std::string* code = r.wubi.find(ch);
      std::cout << encode_utf8(ch) << '\t' << (code ? *code : "-") << '\t';
      for (int i = 0; i < GlyphVector::kDim; ++i)
        std::cout << (i ? " " : "") << vec.values[i];
      std::cout << "\n";
    }
    return 0;
  }

  if (phonetic_mode) {
    Resources r = load_resources(data, false);
    for (char32_t ch : chars) {
      PhoneticVector vec = encode_phonetic(ch, r.pinyin, r.phonetics, data.mode());
      const std::string* syllable = r.pinyin.canonical(ch);
      std::cout << encode_utf8(ch) << '\t' << (syllable ? *syllable : "-") << '\t';
      if (syllable) {
        SyllableParts parts = parse_syllable(*syllable, r.phonetics.finals);
        std::cout << (parts.initial.empty() ? "-" : parts.initial) << '\t' << parts.final
                  << '\t' << parts.tone << '\t';
      } else {
        std::cout << "-\t-\t-\t";
      }
      for (int i = 0; i < PhoneticVector::kDim; ++i)
        std::cout << (i ? " " : "") << vec.values[i];
      std::cout << "\n";
    }
    return 0;
  }

  if (fused_mode) {
    if (strategy != "concat")
      fail(ErrorKind::StrategyMismatch,
           "encode --fused supports the concat strategy only (others need a trained model)");
    FusionSpec spec;
    spec.features = parse_feature_set(features_csv);
    Resources r = load_resources(data, spec.features.semantic);
    FusedSequence fused = embed_sentence(chars, r.feat, spec, nullptr, data.mode());
    for (int row = 0; row < fused.matrix.rows; ++row) {
      for (int col = 0; col < fused.matrix.cols; ++col)
        std::cout << (col ? " " : "") << fused.matrix.at(row, col);
      std::cout << "\n";
    }
    return 0;
  }

  fail(ErrorKind::MalformedLine, "pick one of --glyph, --phonetic, --fused");
}

int run_similar(const DataOptions& data, const std::string& space_name, int k,
                const std::string& char_utf8) {
  std::u32string query = decode_utf8(char_utf8);
  if (query.size() != 1)
    fail(ErrorKind::NotSingleChar, "similar expects exactly one character");
  FeatureSpace space = parse_feature_space(space_name);
  Resources r = load_resources(data, space == FeatureSpace::Semantic);

  NeighborList neighbors = knn(query[0], space, k, r.inventory, r.feat, Exec::Parallel);
  for (const Neighbor& nb : neighbors.neighbors)
    std::cout << encode_utf8(nb.ch) << '\t' << fmt6(nb.distance) << "\n";
  return 0;
}

int run_augment(const DataOptions& data, const std::string& in_path,
                const std::string& out_path, const std::string& records_path,
                const std::string& spaces_csv, double probability, int k,
                std::optional<double> max_distance, uint64_t seed, bool pairs,
                bool allow_semantic) {
  AugmentConfig config;
  config.spaces.clear();
  std::stringstream ss(spaces_csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) config.spaces.push_back(parse_feature_space(item));
  bool uses_semantic = false;
  for (FeatureSpace s : config.spaces) uses_semantic |= s == FeatureSpace::Semantic;
  if (uses_semantic && !allow_semantic)
    fail(ErrorKind::MalformedLine,
         "semantic substitution is off by default; pass --allow-semantic to enable it");
  config.probability = probability;
  config.neighbor_pool_k = k;
  config.max_distance = max_distance;
  config.seed = seed;
  config.emit_pairs = pairs;

  Resources r = load_resources(data, uses_semantic);
  LabeledCorpus corpus = load_corpus(in_path);
  AugmentResult result = substitute_corpus(corpus, r.inventory, r.feat, config,
                                           Exec::Parallel);
  report_warnings(result.warnings);
  save_corpus(result.corpus, out_path);

  if (!records_path.empty()) {
    std::ofstream records(records_path);
    if (!records) fail(ErrorKind::IoError, "cannot write " + records_path);
    records << "sentence\tposition\toriginal\treplacement\tspace\tdistance\n";
    for (const SubstitutionRecord& record : result.records)
      records << record.sentence << '\t' << record.position << '\t'
              << encode_utf8(record.original) << '\t' << encode_utf8(record.replacement)
              << '\t' << feature_space_name(record.space) << '\t'
              << fmt6(record.distance) << "\n";
  }

  std::cerr << "sentences " << corpus.sentences.size() << " -> "
            << result.corpus.sentences.size() << ", entity characters " << result.eligible
            << ", replaced " << result.records.size() << ", uncovered "
            << result.uncovered << ", empty pools " << result.empty_pools << "\n";
  return 0;
}

TrainConfig train_flags_to_config(int batch_size, int epochs, double lr, double dropout,
                                  int patience, uint64_t seed, bool serial) {
  TrainConfig tc;
  tc.batch_size = batch_size;
  tc.max_epochs = epochs;
  tc.learning_rate = lr;
  tc.dropout = dropout;
  tc.patience = patience;
  tc.seed = seed;
  tc.exec = serial ? Exec::Serial : Exec::Parallel;
  tc.log = &std::cerr;
  return tc;
}

int run_train(const DataOptions& data, const std::string& train_path,
              const std::string& dev_path, const std::string& out_path,
              const std::string& strategy, const std::string& features_csv,
              int hidden, int linear_out, const TrainConfig& tc) {
  Resources r = load_resources(data, true);
  LabeledCorpus train_corpus = load_corpus(train_path);
  LabeledCorpus dev_corpus = load_corpus(dev_path);

  LabeledCorpus merged = train_corpus;
  merged.sentences.insert(merged.sentences.end(), dev_corpus.sentences.begin(),
                          dev_corpus.sentences.end());

  TaggerConfig config;
  config.fusion.kind = parse_strategy(strategy);
  config.fusion.features = parse_feature_set(features_csv);
  config.fusion.linear_out = linear_out;
  config.semantic_dim = r.semantic.dimension;
  config.hidden = hidden;
  config.dropout = tc.dropout;
  config.tags = TagSet::from_corpus(merged);

  Rng init_rng = Rng::substream(tc.seed, 0x1217);
  TaggerModel init = TaggerModel::create(config, init_rng);
  std::cerr << "training " << strategy_name(config.fusion.kind) << " model, features "
            << config.fusion.features.describe() << ", " << init.layout.total
            << " parameters, " << train_corpus.sentences.size() << " train / "
            << dev_corpus.sentences.size() << " dev sentences\n";

  TrainResult result = train(init, train_corpus, dev_corpus, r.feat, tc);
  std::cerr << "best epoch " << result.best_epoch << ", dev loss "
            << result.best_dev_loss << "\n";
  save_model(result.model, out_path);
  std::cerr << "saved " << out_path << "\n";
  return 0;
}

int run_tag(const DataOptions& data, const std::string& model_path,
            const std::string& input_path) {
  TaggerModel model = load_model(model_path);
  Resources r = load_resources(data, model.config.fusion.features.semantic);
  if (model.config.fusion.features.semantic &&
      r.semantic.dimension != model.config.semantic_dim)
    fail(ErrorKind::DimensionMismatch,
         "model expects semantic dimension " + std::to_string(model.config.semantic_dim) +
             ", table has " + std::to_string(r.semantic.dimension));

  std::ifstream in(input_path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + input_path);
  std::vector<std::u32string> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) sentences.push_back(decode_utf8(line));
  }

  auto predictions = predict_corpus(model, sentences, r.feat, Exec::Parallel);
  for (size_t s = 0; s < sentences.size(); ++s) {
    for (size_t i = 0; i < sentences[s].size(); ++i)
      std::cout << encode_utf8(sentences[s][i]) << '\t' << predictions[s][i] << "\n";
    std::cout << "\n";
  }
  return 0;
}

int run_eval(const DataOptions& data, const std::string& model_path,
             const std::string& test_path) {
  TaggerModel model = load_model(model_path);
  Resources r = load_resources(data, model.config.fusion.features.semantic);
  if (model.config.fusion.features.semantic &&
      r.semantic.dimension != model.config.semantic_dim)
    fail(ErrorKind::DimensionMismatch,
         "model expects semantic dimension " + std::to_string(model.config.semantic_dim) +
             ", table has " + std::to_string(r.semantic.dimension));
  LabeledCorpus test = load_corpus(test_path);

  std::vector<std::u32string> sentences;
  for (const LabeledSentence& s : test.sentences) sentences.push_back(s.chars);
  auto predictions = predict_corpus(model, sentences, r.feat, Exec::Parallel);
  Metrics m = micro_metrics(test, predictions);

  std::cout << fmt6(m.precision) << '\t' << fmt6(m.recall) << '\t' << fmt6(m.f1) << '\t'
            << m.tp << '\t' << m.predicted << '\t' << m.gold << '\t' << m.repairs << "\n";
  std::cerr << "precision " << fmt6(m.precision) << "\nrecall    " << fmt6(m.recall)
            << "\nf1        " << fmt6(m.f1) << "\nspans: " << m.tp << " matched of "
            << m.predicted << " predicted / " << m.gold << " gold, " << m.repairs
            << " BIO repairs\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-feature (semantic + glyph + phonetic) Chinese character "
               "embeddings and a substitution-robust BiLSTM+CRF tagger"};
  app.require_subcommand(1);

  // inspect
  auto* inspect = app.add_subcommand("inspect", "load tables and print coverage statistics");
  DataOptions inspect_data;
  add_data_flags(inspect, inspect_data);

  // encode
  auto* encode = app.add_subcommand("encode", "print per-character embedding vectors");
  DataOptions encode_data;
  add_data_flags(encode, encode_data);
  bool glyph_mode = false, phonetic_mode = false, fused_mode = false;
  auto* glyph_flag = encode->add_flag("--glyph", glyph_mode, "25-d Five-Strokes glyph embedding");
  auto* phonetic_flag =
      encode->add_flag("--phonetic", phonetic_mode, "39-d phonetic embedding");
  auto* fused_flag = encode->add_flag("--fused", fused_mode, "fused embedding matrix");
  glyph_flag->excludes(phonetic_flag)->excludes(fused_flag);
  phonetic_flag->excludes(fused_flag);
  std::string encode_strategy = "concat";
  encode->add_option("--strategy", encode_strategy, "fusion strategy for --fused");
  std::string encode_features = "semantic,glyph,phonetic";
  encode->add_option("--features", encode_features, "feature subset for --fused");
  std::string encode_text;
  encode->add_option("text", encode_text, "characters to encode")->required();

  // similar
  auto* similar = app.add_subcommand("similar", "nearest neighbors of a character");
  DataOptions similar_data;
  add_data_flags(similar, similar_data);
  std::string similar_space;
  similar->add_option("--space", similar_space, "semantic|glyph|phonetic")->required();
  int similar_k = 5;
  similar->add_option("-k", similar_k, "neighbor count");
  std::string similar_char;
  similar->add_option("char", similar_char, "query character")->required();

  // augment
  auto* augment = app.add_subcommand("augment", "generate a character-substitution corpus");
  DataOptions augment_data;
  add_data_flags(augment, augment_data);
  std::string augment_in, augment_out, augment_records;
  augment->add_option("--train", augment_in, "input corpus (column format)")->required();
  augment->add_option("--out", augment_out, "output corpus path")->required();
  augment->add_option("--records", augment_records, "substitution record TSV");
  std::string augment_spaces = "glyph,phonetic";
  augment->add_option("--spaces", augment_spaces, "comma-separated substitution spaces");
  double augment_p = 0.3;
  augment->add_option("-p,--probability", augment_p, "per-character substitution probability");
  int augment_k = 5;
  augment->add_option("-k", augment_k, "neighbor pool size");
  double augment_max_distance = -1.0;
  augment->add_option("--max-distance", augment_max_distance,
                      "drop candidates farther than this");
  uint64_t augment_seed = 0;
  augment->add_option("--seed", augment_seed, "random seed");
  bool augment_pairs = false;
  augment->add_flag("--pairs", augment_pairs, "interleave originals with modified copies");
  bool augment_allow_semantic = false;
  augment->add_flag("--allow-semantic", augment_allow_semantic,
                    "permit semantic-space substitution");

  // train
  auto* train_cmd = app.add_subcommand("train", "train a BiLSTM+CRF tagger");
  DataOptions train_data;
  add_data_flags(train_cmd, train_data);
  std::string train_path, dev_path, train_out;
  train_cmd->add_option("--train", train_path, "training corpus")->required();
  train_cmd->add_option("--dev", dev_path, "development corpus")->required();
  train_cmd->add_option("--out", train_out, "checkpoint output path")->required();
  std::string train_strategy = "concat";
  train_cmd->add_option("--strategy", train_strategy, "concat|concat-linear|multi-lstm");
  std::string train_features = "semantic,glyph,phonetic";
  train_cmd->add_option("--features", train_features, "feature subset");
  int train_hidden = 100, train_batch = 12, train_epochs = 60, train_patience = 5;
  int train_linear_out = 0;
  double train_lr = 2e-3, train_dropout = 0.4;
  uint64_t train_seed = 0;
  bool train_serial = false;
  train_cmd->add_option("--hidden", train_hidden, "hidden units per direction");
  train_cmd->add_option("--batch-size", train_batch, "sentences per optimizer step");
  train_cmd->add_option("--epochs", train_epochs, "maximum epochs");
  train_cmd->add_option("--lr", train_lr, "Adam learning rate");
  train_cmd->add_option("--dropout", train_dropout, "dropout rate");
  train_cmd->add_option("--patience", train_patience, "early-stop patience (epochs)");
  train_cmd->add_option("--linear-out", train_linear_out,
                        "concat-linear output dimension (0 = concat width)");
  train_cmd->add_option("--seed", train_seed, "random seed");
  train_cmd->add_flag("--serial", train_serial, "disable OpenMP batch parallelism");

  // tag
  auto* tag = app.add_subcommand("tag", "tag raw text, one sentence per line");
  DataOptions tag_data;
  add_data_flags(tag, tag_data);
  std::string tag_model, tag_input;
  tag->add_option("--model", tag_model, "model checkpoint")->required();
  tag->add_option("input", tag_input, "input text file")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "entity-level precision/recall/F1 on a test corpus");
  DataOptions eval_data;
  add_data_flags(eval, eval_data);
  std::string eval_model, eval_test;
  eval->add_option("--model", eval_model, "model checkpoint")->required();
  eval->add_option("--test", eval_test, "test corpus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*inspect) return run_inspect(inspect_data);
    if (*encode)
      return run_encode(encode_data, encode_text, glyph_mode, phonetic_mode, fused_mode,
                        encode_strategy, encode_features);
    if (*similar) return run_similar(similar_data, similar_space, similar_k, similar_char);
    if (*augment) {
      std::optional<double> max_distance;
      if (augment_max_distance >= 0.0) max_distance = augment_max_distance;
      return run_augment(augment_data, augment_in, augment_out, augment_records,
                         augment_spaces, augment_p, augment_k, max_distance, augment_seed,
                         augment_pairs, augment_allow_semantic);
    }
    if (*train_cmd) {
      TrainConfig tc = train_flags_to_config(train_batch, train_epochs, train_lr,
                                             train_dropout, train_patience, train_seed,
                                             train_serial);
      return run_train(train_data, train_path, dev_path, train_out, train_strategy,
                       train_features, train_hidden, train_linear_out, tc);
    }
    if (*tag) return run_tag(tag_data, tag_model, tag_input);
    if (*eval) return run_eval(eval_data, eval_model, eval_test);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::NumericFailure ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
