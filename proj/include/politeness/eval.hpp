#ifndef POLITENESS_EVAL_HPP_
#define POLITENESS_EVAL_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "politeness/corpus.hpp"
#include "politeness/features.hpp"
#include "politeness/structures.hpp"
#include "politeness/svm.hpp"

namespace polite {

// Human inter-annotator agreement on the four-way labeling task. A
// reference constant reported alongside classifier accuracy for
// context; never a computed quantity.
inline constexpr double kHumanAgreementReference = 0.79;
inline constexpr std::string_view kHumanAgreementLabel =
    "human agreement (reference)";

struct LabelMetrics {
  // nullopt marks an undefined value (zero denominator): precision when
  // the label was never predicted, recall when it never occurs in the
  // gold labels, F1 when either side is undefined or both are zero.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  uint64_t gold_count = 0;
  uint64_t predicted_count = 0;
};

struct Metrics {
  double accuracy = 0.0;
  uint64_t n = 0;
  // confusion[gold][predicted], labels in canonical order
  std::array<std::array<uint64_t, kNumLabels>, kNumLabels> confusion{};
  std::array<LabelMetrics, kNumLabels> per_label;
};

// Pure recount over two equal-length, non-empty label sequences.
Metrics compute_metrics(const std::vector<PolitenessLabel>& gold,
                        const std::vector<PolitenessLabel>& predicted);

// Runs the model over labeled vectors and scores the predictions.
// Order of the test items does not affect the result.
Metrics evaluate(
    const SvmModel& model,
    const std::vector<std::pair<FeatureVector, PolitenessLabel>>& test);

struct AblationRow {
  std::string name;  // e.g. "uni", "uni_bi", "uni_bi_struct"
  FeatureConfig config;
  uint32_t vocabulary_dimension = 0;
  Metrics metrics;
};

struct AblationReport {
  std::vector<AblationRow> rows;  // in preset order
  // kHumanAgreementReference when the report includes the context row.
  std::optional<double> human_reference;
  uint64_t n_train = 0;
  uint64_t n_test = 0;
  uint64_t split_seed = 0;
  uint64_t train_seed = 0;
};

// Splits once, then for each preset: vocabulary from the train part,
// model from the train part, metrics from the test part. Every row
// therefore scores the identical test set.
AblationReport run_ablation(const Corpus& corpus, const SplitSpec& split_spec,
                            const TrainConfig& train_config,
                            const std::vector<FeatureConfig>& presets,
                            const Lexicon& lexicon,
                            bool include_human_reference = true);

// Aligned plain-text renderings for terminal output.
std::string render_text(const Metrics& metrics);
std::string render_text(const AblationReport& report);

}  // namespace polite

#endif  // POLITENESS_EVAL_HPP_
