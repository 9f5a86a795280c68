// Command-line front end: every toolkit operation behind one binary.
// Exit status: 0 success, 1 usage error, 2 data error.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "politeness/corpus.hpp"
#include "politeness/error.hpp"
#include "politeness/eval.hpp"
#include "politeness/features.hpp"
#include "politeness/structures.hpp"
#include "politeness/svm.hpp"
#include "politeness/textproc.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace polite;

namespace {

CorpusFormat parse_format(const std::string& name) {
  if (name == "jsonl") return CorpusFormat::Jsonl;
  if (name == "tsv") return CorpusFormat::Tsv;
  throw UsageError("unknown corpus format '" + name + "' (jsonl or tsv)");
}

Lexicon resolve_lexicon(const std::string& path, bool no_defaults) {
  if (path.empty()) {
    if (no_defaults)
      throw UsageError("--no-default-lexicon requires --lexicon FILE");
    return default_lexicon();
  }
  return load_lexicon(path, /*merge_defaults=*/!no_defaults);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

// Writes to the file when given, stdout otherwise.
void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << content;
    return;
  }
  auto out = open_output(output_path);
  out << content;
  if (!out) throw DataError("failed writing '" + output_path + "'");
}

std::vector<Annotation> annotations_of(const Corpus& corpus) {
  std::vector<Annotation> out;
  out.reserve(corpus.size());
  for (const Comment& c : corpus.comments) {
    if (!c.label)
      throw DataError("comment '" + c.id + "' in " + corpus.name +
                      " has no label; agreement needs fully labeled input");
    out.emplace_back(c.id, *c.label);
  }
  return out;
}

ordered_json confusion_json(
    const std::array<std::array<uint64_t, kNumLabels>, kNumLabels>& confusion) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : confusion) {
    ordered_json r = ordered_json::array();
    for (uint64_t v : row) r.push_back(v);
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json labels_json() {
  ordered_json labels = ordered_json::array();
  for (PolitenessLabel l : kAllLabels) labels.push_back(to_string(l));
  return labels;
}

ordered_json metrics_json(const Metrics& m) {
  ordered_json j;
  j["n"] = m.n;
  j["accuracy"] = m.accuracy;
  ordered_json per;
  for (size_t c = 0; c < kNumLabels; ++c) {
    const LabelMetrics& lm = m.per_label[c];
    ordered_json lj;
    lj["precision"] = lm.precision ? ordered_json(*lm.precision) : ordered_json();
    lj["recall"] = lm.recall ? ordered_json(*lm.recall) : ordered_json();
    lj["f1"] = lm.f1 ? ordered_json(*lm.f1) : ordered_json();
    lj["gold"] = lm.gold_count;
    lj["predicted"] = lm.predicted_count;
    per[std::string(to_string(kAllLabels[c]))] = std::move(lj);
  }
  j["per_label"] = std::move(per);
  j["labels"] = labels_json();
  j["confusion"] = confusion_json(m.confusion);
  return j;
}

std::string pretty(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---- subcommand implementations --------------------------------------

struct CommonInput {
  std::string path;
  std::string format = "jsonl";

  Corpus load() const { return load_corpus(path, parse_format(format)); }
};

int cmd_split(const CommonInput& input, uint64_t seed, double train_frac,
              double test_frac, double valid_frac,
              const std::string& output_dir, const std::string& stem_flag) {
  const Corpus corpus = input.load();
  SplitSpec spec;
  spec.train_fraction = train_frac;
  spec.test_fraction = test_frac;
  spec.validation_fraction = valid_frac;
  spec.seed = seed;
  const SplitResult result = split(corpus, spec);

  const fs::path in_path(input.path);
  const fs::path dir =
      output_dir.empty() ? (in_path.has_parent_path() ? in_path.parent_path()
                                                      : fs::path("."))
                         : fs::path(output_dir);
  const std::string stem =
      stem_flag.empty() ? in_path.stem().string() : stem_flag;

  const std::string train_name = stem + ".train.jsonl";
  const std::string test_name = stem + ".test.jsonl";
  const std::string valid_name = stem + ".valid.jsonl";
  write_corpus_jsonl(result.train, dir / train_name);
  write_corpus_jsonl(result.test, dir / test_name);
  write_corpus_jsonl(result.validation, dir / valid_name);

  ordered_json manifest;
  manifest["input"] = input.path;
  manifest["seed"] = seed;
  manifest["fractions"] = {{"train", train_frac},
                           {"test", test_frac},
                           {"validation", valid_frac}};
  manifest["total"] = corpus.size();
  manifest["counts"] = {{"train", result.train.size()},
                        {"test", result.test.size()},
                        {"validation", result.validation.size()}};
  manifest["files"] = {{"train", train_name},
                       {"test", test_name},
                       {"validation", valid_name}};
  const std::string text = pretty(manifest);
  auto out = open_output(dir / (stem + ".split.json"));
  out << text;
  std::cout << text;
  return 0;
}

int cmd_agreement(const CommonInput& a_input, const CommonInput& b_input,
                  const std::string& format, const std::string& output) {
  const Corpus a = a_input.load();
  const Corpus b = b_input.load();
  const AgreementReport report =
      compute_agreement(annotations_of(a), annotations_of(b));

  if (format == "json") {
    ordered_json j;
    j["n_items"] = report.n_items;
    j["percent_agreement"] = report.percent_agreement;
    j["cohen_kappa"] = report.cohen_kappa ? ordered_json(*report.cohen_kappa)
                                          : ordered_json();
    j["labels"] = labels_json();
    j["confusion"] = confusion_json(report.confusion);
    emit(pretty(j), output);
    return 0;
  }

  std::ostringstream text;
  text << "items     " << report.n_items << "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", report.percent_agreement);
  text << "agreement " << buf << "\n";
  if (report.cohen_kappa) {
    std::snprintf(buf, sizeof(buf), "%.4f", *report.cohen_kappa);
    text << "kappa     " << buf << "\n";
  } else {
    text << "kappa     undefined (chance agreement is 1)\n";
  }
  text << "\nconfusion (rows first annotator, columns second)\n";
  for (size_t i = 0; i < kNumLabels; ++i) {
    text << to_string(kAllLabels[i]);
    for (size_t k = to_string(kAllLabels[i]).size(); k < 12; ++k) text << ' ';
    for (size_t j = 0; j < kNumLabels; ++j)
      text << " " << report.confusion[i][j];
    text << "\n";
  }
  emit(text.str(), output);
  return 0;
}

int cmd_detect(const CommonInput& input, const std::string& lexicon_path,
               bool no_defaults, const std::string& output) {
  const Corpus corpus = input.load();
  const Lexicon lexicon = resolve_lexicon(lexicon_path, no_defaults);

  std::ostringstream lines;
  for (const Comment& c : corpus.comments) {
    const StructureProfile prof = profile(tokenize(normalize(c.text)), lexicon);
    ordered_json j;
    j["id"] = c.id;
    ordered_json counts;
    for (StructureKind kind : kAllStructureKinds)
      counts[std::string(kind_code(kind))] = prof.count(kind);
    j["counts"] = std::move(counts);
    ordered_json matches = ordered_json::array();
    for (const StructureMatch& m : prof.matches) {
      ordered_json mj;
      mj["kind"] = kind_code(m.kind);
      mj["start"] = m.token_start;
      mj["end"] = m.token_end;
      mj["evidence"] = m.evidence;
      matches.push_back(std::move(mj));
    }
    j["matches"] = std::move(matches);
    lines << j.dump() << "\n";
  }
  emit(lines.str(), output);
  return 0;
}

FeatureConfig config_from_flags(const std::string& preset, uint32_t min_tf,
                                bool no_l2) {
  const auto p = preset_from_name(preset);
  if (!p)
    throw UsageError("unknown preset '" + preset +
                     "' (uni, uni_bi or uni_bi_struct)");
  FeatureConfig config = FeatureConfig::preset(*p);
  config.min_term_frequency = min_tf;
  config.l2_normalize = !no_l2;
  config.validate();
  return config;
}

int cmd_extract_features(const CommonInput& input, const std::string& preset,
                         uint32_t min_tf, bool no_l2,
                         const std::string& lexicon_path, bool no_defaults,
                         std::string vocab_out, std::string features_out,
                         const std::vector<std::string>& apply_paths) {
  const Corpus corpus = input.load();
  const Lexicon lexicon = resolve_lexicon(lexicon_path, no_defaults);
  const FeatureConfig config = config_from_flags(preset, min_tf, no_l2);

  const fs::path in_path(input.path);
  const std::string stem = in_path.stem().string();
  const fs::path dir =
      in_path.has_parent_path() ? in_path.parent_path() : fs::path(".");
  if (vocab_out.empty()) vocab_out = (dir / (stem + ".vocab")).string();
  if (features_out.empty())
    features_out = (dir / (stem + ".features")).string();

  const Vocabulary vocab = build_vocabulary(corpus, config, lexicon);
  save_vocabulary(vocab, vocab_out);
  write_sparse_features(corpus, vocab, lexicon, features_out);

  ordered_json applied = ordered_json::array();
  for (const std::string& other_path : apply_paths) {
    const Corpus other = load_corpus(other_path, parse_format(input.format));
    const fs::path op(other_path);
    const fs::path odir = op.has_parent_path() ? op.parent_path() : fs::path(".");
    const std::string out_path =
        (odir / (op.stem().string() + ".features")).string();
    write_sparse_features(other, vocab, lexicon, out_path);
    applied.push_back(out_path);
  }

  ordered_json j;
  j["features"] = config.name();
  j["dimension"] = vocab.dimension;
  j["unigrams"] = vocab.unigram_terms.size();
  j["bigrams"] = vocab.bigram_terms.size();
  j["structure_slots"] = config.use_structures ? kNumStructureKinds : 0;
  j["fingerprint"] = vocab.fingerprint;
  j["vocabulary_file"] = vocab_out;
  j["features_file"] = features_out;
  j["applied"] = std::move(applied);
  std::cout << pretty(j);
  return 0;
}

int cmd_train(const CommonInput& input, const std::string& preset,
              uint32_t min_tf, bool no_l2, const std::string& lexicon_path,
              bool no_defaults, const std::string& vocab_in,
              std::string vocab_out, std::string model_out, double lambda,
              uint32_t epochs, uint64_t seed, bool no_shuffle) {
  const Corpus corpus = input.load();
  const Lexicon lexicon = resolve_lexicon(lexicon_path, no_defaults);

  const fs::path in_path(input.path);
  const std::string stem = in_path.stem().string();
  const fs::path dir =
      in_path.has_parent_path() ? in_path.parent_path() : fs::path(".");

  Vocabulary vocab;
  if (!vocab_in.empty()) {
    vocab = load_vocabulary(vocab_in);
    vocab_out = vocab_in;
  } else {
    vocab = build_vocabulary(corpus, config_from_flags(preset, min_tf, no_l2),
                             lexicon);
    if (vocab_out.empty()) vocab_out = (dir / (stem + ".vocab")).string();
    save_vocabulary(vocab, vocab_out);
  }
  if (model_out.empty()) model_out = (dir / (stem + ".model")).string();

  const auto data = vectorize_labeled(corpus, vocab, lexicon);
  TrainConfig config;
  config.lambda = lambda;
  config.epochs = epochs;
  config.seed = seed;
  config.shuffle_each_epoch = !no_shuffle;

  TrainLog log;
  const SvmModel model = train(data, config, vocab.fingerprint, &log);
  for (size_t c = 0; c < kNumLabels; ++c)
    for (size_t e = 0; e < log[c].size(); ++e)
      std::cerr << "objective " << to_string(kAllLabels[c]) << " epoch "
                << e + 1 << " " << log[c][e] << "\n";
  save_model(model, model_out);

  ordered_json j;
  j["seed"] = seed;
  j["lambda"] = lambda;
  j["epochs"] = epochs;
  j["examples"] = data.size();
  j["dimension"] = vocab.dimension;
  j["vocabulary_file"] = vocab_out;
  j["model_file"] = model_out;
  std::cout << pretty(j);
  return 0;
}

int cmd_predict(const CommonInput& input, const std::string& model_path,
                const std::string& vocab_path, const std::string& lexicon_path,
                bool no_defaults, const std::string& output) {
  const Corpus corpus = input.load();
  const Lexicon lexicon = resolve_lexicon(lexicon_path, no_defaults);
  const SvmModel model = load_model(model_path);
  const Vocabulary vocab = load_vocabulary(vocab_path);
  check_compatible(model, vocab);

  std::ostringstream lines;
  for (const Comment& c : corpus.comments) {
    const Prediction p = predict(model, vectorize(c, vocab, lexicon));
    ordered_json j;
    j["id"] = c.id;
    j["label"] = to_string(p.label);
    ordered_json scores;
    for (size_t k = 0; k < kNumLabels; ++k)
      scores[std::string(to_string(kAllLabels[k]))] = p.scores[k];
    j["scores"] = std::move(scores);
    lines << j.dump() << "\n";
  }
  emit(lines.str(), output);
  return 0;
}

int cmd_evaluate(const CommonInput& input, const std::string& model_path,
                 const std::string& vocab_path, const std::string& lexicon_path,
                 bool no_defaults, const std::string& format,
                 const std::string& output) {
  const Corpus corpus = input.load();
  const Lexicon lexicon = resolve_lexicon(lexicon_path, no_defaults);
  const SvmModel model = load_model(model_path);
  const Vocabulary vocab = load_vocabulary(vocab_path);
  check_compatible(model, vocab);

  const Metrics metrics =
      evaluate(model, vectorize_labeled(corpus, vocab, lexicon));
  if (format == "json")
    emit(pretty(metrics_json(metrics)), output);
  else
    emit(render_text(metrics), output);
  return 0;
}

int cmd_ablate(const CommonInput& input, uint64_t seed, double lambda,
               uint32_t epochs, uint32_t min_tf,
               const std::string& lexicon_path, bool no_defaults,
               double train_frac, double test_frac, double valid_frac,
               bool no_reference, const std::string& format,
               const std::string& output) {
  const Corpus corpus = input.load();
  const Lexicon lexicon = resolve_lexicon(lexicon_path, no_defaults);

  SplitSpec split_spec;
  split_spec.train_fraction = train_frac;
  split_spec.test_fraction = test_frac;
  split_spec.validation_fraction = valid_frac;
  split_spec.seed = seed;

  TrainConfig train_config;
  train_config.lambda = lambda;
  train_config.epochs = epochs;
  train_config.seed = seed;

  std::vector<FeatureConfig> presets;
  for (FeaturePreset p : {FeaturePreset::Uni, FeaturePreset::UniBi,
                          FeaturePreset::UniBiStruct}) {
    FeatureConfig config = FeatureConfig::preset(p);
    config.min_term_frequency = min_tf;
    presets.push_back(config);
  }

  const AblationReport report = run_ablation(
      corpus, split_spec, train_config, presets, lexicon, !no_reference);

  if (format == "json") {
    ordered_json j;
    j["seed"] = seed;
    j["n_train"] = report.n_train;
    j["n_test"] = report.n_test;
    ordered_json rows = ordered_json::array();
    for (const AblationRow& row : report.rows) {
      ordered_json rj;
      rj["features"] = row.name;
      rj["dimension"] = row.vocabulary_dimension;
      rj["accuracy"] = row.metrics.accuracy;
      rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    j["human_reference"] = report.human_reference
                               ? ordered_json(*report.human_reference)
                               : ordered_json();
    emit(pretty(j), output);
  } else {
    emit(render_text(report), output);
  }
  return 0;
}

int cmd_tune(const CommonInput& input, uint64_t seed, uint32_t epochs,
             const std::string& preset, uint32_t min_tf,
             const std::string& lexicon_path, bool no_defaults,
             std::vector<double> lambdas, const std::string& format,
             const std::string& output) {
  if (lambdas.empty())
    throw UsageError("--lambdas needs at least one value");
  const Corpus corpus = input.load();
  const Lexicon lexicon = resolve_lexicon(lexicon_path, no_defaults);

  SplitSpec split_spec;
  split_spec.seed = seed;
  const SplitResult parts = split(corpus, split_spec);

  const FeatureConfig config = config_from_flags(preset, min_tf, false);
  const Vocabulary vocab = build_vocabulary(parts.train, config, lexicon);
  const auto train_vecs = vectorize_labeled(parts.train, vocab, lexicon);
  const auto valid_vecs = vectorize_labeled(parts.validation, vocab, lexicon);
  const auto test_vecs = vectorize_labeled(parts.test, vocab, lexicon);

  struct Row {
    double lambda;
    double validation_accuracy;
  };
  std::vector<Row> rows;
  double best_lambda = lambdas.front();
  double best_accuracy = -1.0;
  std::optional<SvmModel> best_model;
  for (double lambda : lambdas) {
    TrainConfig tc;
    tc.lambda = lambda;
    tc.epochs = epochs;
    tc.seed = seed;
    const SvmModel model = train(train_vecs, tc, vocab.fingerprint);
    const double acc = evaluate(model, valid_vecs).accuracy;
    rows.push_back({lambda, acc});
    // Ties go to the stronger regularizer (the larger lambda).
    if (acc > best_accuracy ||
        (acc == best_accuracy && lambda > best_lambda)) {
      best_accuracy = acc;
      best_lambda = lambda;
      best_model = model;
    }
  }
  const double test_accuracy = evaluate(*best_model, test_vecs).accuracy;

  if (format == "json") {
    ordered_json j;
    j["seed"] = seed;
    j["features"] = config.name();
    j["epochs"] = epochs;
    ordered_json rj = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json r;
      r["lambda"] = row.lambda;
      r["validation_accuracy"] = row.validation_accuracy;
      rj.push_back(std::move(r));
    }
    j["rows"] = std::move(rj);
    j["best_lambda"] = best_lambda;
    j["validation_accuracy"] = best_accuracy;
    j["test_accuracy"] = test_accuracy;
    emit(pretty(j), output);
  } else {
    std::ostringstream text;
    char buf[64];
    text << "seed " << seed << "  features " << config.name() << "  epochs "
         << epochs << "\n\n";
    text << "lambda      validation\n";
    for (const Row& row : rows) {
      std::snprintf(buf, sizeof(buf), "%-10g  %.4f", row.lambda,
                    row.validation_accuracy);
      text << buf << "\n";
    }
    std::snprintf(buf, sizeof(buf), "\nbest lambda   %g\ntest accuracy %.4f\n",
                  best_lambda, test_accuracy);
    text << buf;
    emit(text.str(), output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hindi politeness classification toolkit"};
  app.require_subcommand(1);
  int status = 0;

  // split ---------------------------------------------------------------
  auto* split_cmd = app.add_subcommand(
      "split", "Partition a corpus into train/test/validation files");
  CommonInput split_in;
  uint64_t split_seed = kDefaultSeed;
  double train_frac = 0.70, test_frac = 0.10, valid_frac = 0.20;
  std::string split_dir, split_stem;
  split_cmd->add_option("input", split_in.path, "Corpus file")->required();
  split_cmd->add_option("--input-format", split_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  split_cmd->add_option("--seed", split_seed, "Hash seed (default 42)");
  split_cmd->add_option("--train-fraction", train_frac, "Default 0.70");
  split_cmd->add_option("--test-fraction", test_frac, "Default 0.10");
  split_cmd->add_option("--validation-fraction", valid_frac, "Default 0.20");
  split_cmd->add_option("--output-dir", split_dir,
                        "Directory for the split files (default: input's)");
  split_cmd->add_option("--stem", split_stem,
                        "Base name for outputs (default: input stem)");
  split_cmd->callback([&] {
    status = cmd_split(split_in, split_seed, train_frac, test_frac, valid_frac,
                       split_dir, split_stem);
  });

  // agreement -----------------------------------------------------------
  auto* agree_cmd = app.add_subcommand(
      "agreement", "Percent agreement and Cohen's kappa of two annotations");
  CommonInput agree_a, agree_b;
  std::string agree_format = "text", agree_out;
  agree_cmd->add_option("first", agree_a.path, "First annotator's labeled corpus")
      ->required();
  agree_cmd->add_option("second", agree_b.path, "Second annotator's labeled corpus")
      ->required();
  agree_cmd->add_option("--input-format", agree_a.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  agree_cmd->add_option("--format", agree_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  agree_cmd->add_option("--output", agree_out, "Write report here instead of stdout");
  agree_cmd->callback([&] {
    agree_b.format = agree_a.format;
    status = cmd_agreement(agree_a, agree_b, agree_format, agree_out);
  });

  // detect --------------------------------------------------------------
  auto* detect_cmd = app.add_subcommand(
      "detect", "Run the politeness-structure detectors over a corpus");
  CommonInput detect_in;
  std::string detect_lexicon, detect_out;
  bool detect_no_defaults = false;
  detect_cmd->add_option("input", detect_in.path, "Corpus file")->required();
  detect_cmd->add_option("--input-format", detect_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  detect_cmd->add_option("--lexicon", detect_lexicon,
                         "Rule file extending the built-in tables");
  detect_cmd->add_flag("--no-default-lexicon", detect_no_defaults,
                       "Use only the --lexicon file's tables");
  detect_cmd->add_option("--output", detect_out, "Write JSONL here instead of stdout");
  detect_cmd->callback([&] {
    status = cmd_detect(detect_in, detect_lexicon, detect_no_defaults, detect_out);
  });

  // extract-features ----------------------------------------------------
  auto* extract_cmd = app.add_subcommand(
      "extract-features", "Build a vocabulary and write sparse feature files");
  CommonInput extract_in;
  std::string extract_preset = "uni_bi_struct";
  uint32_t extract_min_tf = 2;
  bool extract_no_l2 = false, extract_no_defaults = false;
  std::string extract_lexicon, extract_vocab_out, extract_features_out;
  std::vector<std::string> extract_apply;
  extract_cmd->add_option("input", extract_in.path,
                          "Corpus the vocabulary is built from")->required();
  extract_cmd->add_option("--input-format", extract_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  extract_cmd->add_option("--preset", extract_preset,
                          "uni, uni_bi or uni_bi_struct");
  extract_cmd->add_option("--min-term-frequency", extract_min_tf,
                          "Document-frequency cutoff (default 2)");
  extract_cmd->add_flag("--no-l2-normalize", extract_no_l2,
                        "Keep raw counts instead of unit vectors");
  extract_cmd->add_option("--lexicon", extract_lexicon,
                          "Rule file extending the built-in tables");
  extract_cmd->add_flag("--no-default-lexicon", extract_no_defaults,
                        "Use only the --lexicon file's tables");
  extract_cmd->add_option("--vocab-out", extract_vocab_out,
                          "Vocabulary file (default: <stem>.vocab)");
  extract_cmd->add_option("--features-out", extract_features_out,
                          "Feature file (default: <stem>.features)");
  extract_cmd->add_option("--apply", extract_apply,
                          "Vectorize these corpora with the same vocabulary");
  extract_cmd->callback([&] {
    status = cmd_extract_features(extract_in, extract_preset, extract_min_tf,
                                  extract_no_l2, extract_lexicon,
                                  extract_no_defaults, extract_vocab_out,
                                  extract_features_out, extract_apply);
  });

  // train ---------------------------------------------------------------
  auto* train_cmd = app.add_subcommand("train", "Fit the four-class linear SVM");
  CommonInput train_in;
  std::string train_preset = "uni_bi_struct";
  uint32_t train_min_tf = 2;
  bool train_no_l2 = false, train_no_defaults = false, train_no_shuffle = false;
  std::string train_lexicon, train_vocab_in, train_vocab_out, train_model_out;
  double train_lambda = 1e-4;
  uint32_t train_epochs = 20;
  uint64_t train_seed = kDefaultSeed;
  train_cmd->add_option("input", train_in.path, "Labeled corpus")->required();
  train_cmd->add_option("--input-format", train_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  train_cmd->add_option("--preset", train_preset, "uni, uni_bi or uni_bi_struct");
  train_cmd->add_option("--min-term-frequency", train_min_tf,
                        "Document-frequency cutoff (default 2)");
  train_cmd->add_flag("--no-l2-normalize", train_no_l2,
                      "Keep raw counts instead of unit vectors");
  train_cmd->add_option("--lexicon", train_lexicon,
                        "Rule file extending the built-in tables");
  train_cmd->add_flag("--no-default-lexicon", train_no_defaults,
                      "Use only the --lexicon file's tables");
  train_cmd->add_option("--vocab", train_vocab_in,
                        "Reuse this vocabulary instead of building one");
  train_cmd->add_option("--vocab-out", train_vocab_out,
                        "Where to save a built vocabulary (default: <stem>.vocab)");
  train_cmd->add_option("--model-out", train_model_out,
                        "Model file (default: <stem>.model)");
  train_cmd->add_option("--lambda", train_lambda,
                        "Regularization strength (default 1e-4)");
  train_cmd->add_option("--epochs", train_epochs, "Training passes (default 20)");
  train_cmd->add_option("--seed", train_seed, "Shuffle seed (default 42)");
  train_cmd->add_flag("--no-shuffle", train_no_shuffle,
                      "Visit examples in corpus order every epoch");
  train_cmd->callback([&] {
    status = cmd_train(train_in, train_preset, train_min_tf, train_no_l2,
                       train_lexicon, train_no_defaults, train_vocab_in,
                       train_vocab_out, train_model_out, train_lambda,
                       train_epochs, train_seed, train_no_shuffle);
  });

  // predict -------------------------------------------------------------
  auto* predict_cmd = app.add_subcommand("predict", "Label a corpus with a model");
  CommonInput predict_in;
  std::string predict_model, predict_vocab, predict_lexicon, predict_out;
  bool predict_no_defaults = false;
  predict_cmd->add_option("input", predict_in.path, "Corpus file")->required();
  predict_cmd->add_option("--input-format", predict_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  predict_cmd->add_option("--model", predict_model, "Model file")->required();
  predict_cmd->add_option("--vocab", predict_vocab, "Vocabulary file")->required();
  predict_cmd->add_option("--lexicon", predict_lexicon,
                          "Rule file extending the built-in tables");
  predict_cmd->add_flag("--no-default-lexicon", predict_no_defaults,
                        "Use only the --lexicon file's tables");
  predict_cmd->add_option("--output", predict_out,
                          "Write JSONL here instead of stdout");
  predict_cmd->callback([&] {
    status = cmd_predict(predict_in, predict_model, predict_vocab,
                         predict_lexicon, predict_no_defaults, predict_out);
  });

  // evaluate ------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Score a model against a labeled corpus");
  CommonInput eval_in;
  std::string eval_model, eval_vocab, eval_lexicon, eval_format = "text",
              eval_out;
  bool eval_no_defaults = false;
  eval_cmd->add_option("input", eval_in.path, "Labeled corpus")->required();
  eval_cmd->add_option("--input-format", eval_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  eval_cmd->add_option("--model", eval_model, "Model file")->required();
  eval_cmd->add_option("--vocab", eval_vocab, "Vocabulary file")->required();
  eval_cmd->add_option("--lexicon", eval_lexicon,
                       "Rule file extending the built-in tables");
  eval_cmd->add_flag("--no-default-lexicon", eval_no_defaults,
                     "Use only the --lexicon file's tables");
  eval_cmd->add_option("--format", eval_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  eval_cmd->add_option("--output", eval_out, "Write report here instead of stdout");
  eval_cmd->callback([&] {
    status = cmd_evaluate(eval_in, eval_model, eval_vocab, eval_lexicon,
                          eval_no_defaults, eval_format, eval_out);
  });

  // ablate --------------------------------------------------------------
  auto* ablate_cmd = app.add_subcommand(
      "ablate", "Compare the uni / uni_bi / uni_bi_struct feature sets");
  CommonInput ablate_in;
  uint64_t ablate_seed = kDefaultSeed;
  double ablate_lambda = 1e-4;
  uint32_t ablate_epochs = 20, ablate_min_tf = 2;
  std::string ablate_lexicon, ablate_format = "text", ablate_out;
  bool ablate_no_defaults = false, ablate_no_reference = false;
  double ablate_train_frac = 0.70, ablate_test_frac = 0.10,
         ablate_valid_frac = 0.20;
  ablate_cmd->add_option("input", ablate_in.path, "Labeled corpus")->required();
  ablate_cmd->add_option("--input-format", ablate_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  ablate_cmd->add_option("--seed", ablate_seed,
                         "Split and shuffle seed (default 42)");
  ablate_cmd->add_option("--lambda", ablate_lambda,
                         "Regularization strength (default 1e-4)");
  ablate_cmd->add_option("--epochs", ablate_epochs, "Training passes (default 20)");
  ablate_cmd->add_option("--min-term-frequency", ablate_min_tf,
                         "Document-frequency cutoff (default 2)");
  ablate_cmd->add_option("--lexicon", ablate_lexicon,
                         "Rule file extending the built-in tables");
  ablate_cmd->add_flag("--no-default-lexicon", ablate_no_defaults,
                       "Use only the --lexicon file's tables");
  ablate_cmd->add_option("--train-fraction", ablate_train_frac, "Default 0.70");
  ablate_cmd->add_option("--test-fraction", ablate_test_frac, "Default 0.10");
  ablate_cmd->add_option("--validation-fraction", ablate_valid_frac,
                         "Default 0.20");
  ablate_cmd->add_flag("--no-reference", ablate_no_reference,
                       "Leave out the human-agreement reference row");
  ablate_cmd->add_option("--format", ablate_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  ablate_cmd->add_option("--output", ablate_out,
                         "Write report here instead of stdout");
  ablate_cmd->callback([&] {
    status = cmd_ablate(ablate_in, ablate_seed, ablate_lambda, ablate_epochs,
                        ablate_min_tf, ablate_lexicon, ablate_no_defaults,
                        ablate_train_frac, ablate_test_frac, ablate_valid_frac,
                        ablate_no_reference, ablate_format, ablate_out);
  });

  // tune ----------------------------------------------------------------
  auto* tune_cmd = app.add_subcommand(
      "tune", "Pick the regularization strength by validation accuracy");
  CommonInput tune_in;
  uint64_t tune_seed = kDefaultSeed;
  uint32_t tune_epochs = 20, tune_min_tf = 2;
  std::string tune_preset = "uni_bi_struct", tune_lexicon, tune_format = "text",
              tune_out;
  bool tune_no_defaults = false;
  std::vector<double> tune_lambdas = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  tune_cmd->add_option("input", tune_in.path, "Labeled corpus")->required();
  tune_cmd->add_option("--input-format", tune_in.format, "jsonl or tsv")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  tune_cmd->add_option("--seed", tune_seed, "Split and shuffle seed (default 42)");
  tune_cmd->add_option("--epochs", tune_epochs, "Training passes (default 20)");
  tune_cmd->add_option("--preset", tune_preset, "uni, uni_bi or uni_bi_struct");
  tune_cmd->add_option("--min-term-frequency", tune_min_tf,
                       "Document-frequency cutoff (default 2)");
  tune_cmd->add_option("--lexicon", tune_lexicon,
                       "Rule file extending the built-in tables");
  tune_cmd->add_flag("--no-default-lexicon", tune_no_defaults,
                     "Use only the --lexicon file's tables");
  tune_cmd->add_option("--lambdas", tune_lambdas,
                       "Candidate regularization strengths")
      ->delimiter(',');
  tune_cmd->add_option("--format", tune_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  tune_cmd->add_option("--output", tune_out, "Write report here instead of stdout");
  tune_cmd->callback([&] {
    status = cmd_tune(tune_in, tune_seed, tune_epochs, tune_preset, tune_min_tf,
                      tune_lexicon, tune_no_defaults, tune_lambdas, tune_format,
                      tune_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
