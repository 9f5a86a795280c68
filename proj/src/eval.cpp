#include "politeness/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "politeness/error.hpp"

namespace polite {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string fixed4(const std::optional<double>& v) {
  return v ? fixed4(*v) : std::string("-");
}

std::string pad(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

Metrics compute_metrics(const std::vector<PolitenessLabel>& gold,
                        const std::vector<PolitenessLabel>& predicted) {
  if (gold.size() != predicted.size())
    throw DataError("gold and predicted label sequences differ in length (" +
                    std::to_string(gold.size()) + " vs " +
                    std::to_string(predicted.size()) + ")");
  if (gold.empty()) throw DataError("cannot compute metrics over zero items");

  Metrics m;
  m.n = gold.size();
  for (size_t i = 0; i < gold.size(); ++i)
    ++m.confusion[static_cast<size_t>(gold[i])][static_cast<size_t>(predicted[i])];

  uint64_t correct = 0;
  for (size_t c = 0; c < kNumLabels; ++c) correct += m.confusion[c][c];
  m.accuracy = static_cast<double>(correct) / static_cast<double>(m.n);

  for (size_t c = 0; c < kNumLabels; ++c) {
    LabelMetrics& lm = m.per_label[c];
    for (size_t p = 0; p < kNumLabels; ++p) {
      lm.gold_count += m.confusion[c][p];
      lm.predicted_count += m.confusion[p][c];
    }
    const double diag = static_cast<double>(m.confusion[c][c]);
    if (lm.predicted_count > 0)
      lm.precision = diag / static_cast<double>(lm.predicted_count);
    if (lm.gold_count > 0)
      lm.recall = diag / static_cast<double>(lm.gold_count);
    if (lm.precision && lm.recall && *lm.precision + *lm.recall > 0.0)
      lm.f1 = 2.0 * *lm.precision * *lm.recall / (*lm.precision + *lm.recall);
  }
  return m;
}

Metrics evaluate(
    const SvmModel& model,
    const std::vector<std::pair<FeatureVector, PolitenessLabel>>& test) {
  if (test.empty()) throw DataError("test set is empty");
  std::vector<PolitenessLabel> gold, pred;
  gold.reserve(test.size());
  pred.reserve(test.size());
  for (const auto& [x, label] : test) {
    gold.push_back(label);
    pred.push_back(predict(model, x).label);
  }
  return compute_metrics(gold, pred);
}

AblationReport run_ablation(const Corpus& corpus, const SplitSpec& split_spec,
                            const TrainConfig& train_config,
                            const std::vector<FeatureConfig>& presets,
                            const Lexicon& lexicon,
                            bool include_human_reference) {
  if (presets.empty())
    throw UsageError("ablation needs at least one feature configuration");
  train_config.validate();
  for (const FeatureConfig& config : presets) config.validate();
  for (const Comment& c : corpus.comments)
    if (!c.label)
      throw DataError("ablation requires a fully labeled corpus; comment '" +
                      c.id + "' has no label");

  const SplitResult parts = split(corpus, split_spec);

  AblationReport report;
  report.n_train = parts.train.size();
  report.n_test = parts.test.size();
  report.split_seed = split_spec.seed;
  report.train_seed = train_config.seed;
  if (include_human_reference)
    report.human_reference = kHumanAgreementReference;

  for (const FeatureConfig& config : presets) {
    const Vocabulary vocab = build_vocabulary(parts.train, config, lexicon);
    const auto train_vecs = vectorize_labeled(parts.train, vocab, lexicon);
    const auto test_vecs = vectorize_labeled(parts.test, vocab, lexicon);
    const SvmModel model = train(train_vecs, train_config, vocab.fingerprint);

    AblationRow row;
    row.name = config.name();
    row.config = config;
    row.vocabulary_dimension = vocab.dimension;
    row.metrics = evaluate(model, test_vecs);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string render_text(const Metrics& metrics) {
  std::ostringstream out;
  out << "items    " << metrics.n << "\n";
  out << "accuracy " << fixed4(metrics.accuracy) << "\n\n";

  size_t name_w = 5;  // "label"
  for (PolitenessLabel l : kAllLabels)
    name_w = std::max(name_w, to_string(l).size());

  out << pad("label", name_w) << "  precision  recall  f1      gold  predicted\n";
  for (size_t c = 0; c < kNumLabels; ++c) {
    const LabelMetrics& lm = metrics.per_label[c];
    out << pad(std::string(to_string(kAllLabels[c])), name_w) << "  "
        << pad(fixed4(lm.precision), 9) << "  " << pad(fixed4(lm.recall), 6)
        << "  " << pad(fixed4(lm.f1), 6) << "  "
        << pad(std::to_string(lm.gold_count), 4) << "  "
        << lm.predicted_count << "\n";
  }

  out << "\nconfusion (rows gold, columns predicted)\n";
  out << pad("", name_w);
  for (PolitenessLabel l : kAllLabels)
    out << "  " << pad(std::string(to_string(l)), 11);
  out << "\n";
  for (size_t g = 0; g < kNumLabels; ++g) {
    out << pad(std::string(to_string(kAllLabels[g])), name_w);
    for (size_t p = 0; p < kNumLabels; ++p)
      out << "  " << pad(std::to_string(metrics.confusion[g][p]), 11);
    out << "\n";
  }
  return out.str();
}

std::string render_text(const AblationReport& report) {
  std::ostringstream out;
  out << "train " << report.n_train << "  test " << report.n_test
      << "  split-seed " << report.split_seed << "  train-seed "
      << report.train_seed << "\n\n";

  size_t name_w = kHumanAgreementLabel.size();
  for (const AblationRow& row : report.rows)
    name_w = std::max(name_w, row.name.size());

  out << pad("features", name_w) << "  dimension  accuracy\n";
  for (const AblationRow& row : report.rows)
    out << pad(row.name, name_w) << "  "
        << pad(std::to_string(row.vocabulary_dimension), 9) << "  "
        << fixed4(row.metrics.accuracy) << "\n";
  if (report.human_reference)
    out << pad(std::string(kHumanAgreementLabel), name_w) << "  "
        << pad("-", 9) << "  " << fixed4(*report.human_reference) << "\n";
  return out.str();
}

}  // namespace polite
