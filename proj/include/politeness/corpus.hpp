#ifndef POLITENESS_CORPUS_HPP_
#define POLITENESS_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polite {

// Seed used by every randomized operation when the caller gives none.
// Fixed (never wall-clock) so unseeded runs are still reproducible.
inline constexpr uint64_t kDefaultSeed = 42;

// Four-way politeness target. The declaration order is the canonical
// order used for tie-breaks, label vectors and report rows.
enum class PolitenessLabel : uint8_t {
  Neutral = 0,
  Appropriate = 1,
  Polite = 2,
  Impolite = 3,
};

inline constexpr std::array<PolitenessLabel, 4> kAllLabels = {
    PolitenessLabel::Neutral, PolitenessLabel::Appropriate,
    PolitenessLabel::Polite, PolitenessLabel::Impolite};

inline constexpr size_t kNumLabels = 4;

std::string_view to_string(PolitenessLabel label);

// Case-insensitive parse of {neutral, appropriate, polite, impolite};
// anything else is nullopt (the label set is closed).
std::optional<PolitenessLabel> parse_label(std::string_view text);

struct Comment {
  std::string id;
  std::string text;
  std::optional<PolitenessLabel> label;
};

struct Corpus {
  std::string name;
  std::vector<Comment> comments;

  size_t size() const { return comments.size(); }
  bool empty() const { return comments.empty(); }
};

enum class CorpusFormat { Jsonl, Tsv };

// Reads a corpus file preserving record order.
//   jsonl: {"id": str, "text": str, "label": str?} per line, extra keys
//          ignored
//   tsv:   id <TAB> label <TAB> text, empty or "-" label means unlabeled
// Throws DataError with the offending line number on malformed records,
// duplicate ids or unknown label strings.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
Corpus parse_corpus(std::string_view content, CorpusFormat format,
                    std::string_view name);

void write_corpus_jsonl(const Corpus& corpus, const std::filesystem::path& path);

struct SplitSpec {
  double train_fraction = 0.70;
  double test_fraction = 0.10;
  double validation_fraction = 0.20;
  uint64_t seed = kDefaultSeed;

  // Fractions must each lie in (0,1) and sum to 1 within 1e-9.
  void validate() const;
};

struct SplitResult {
  Corpus train;
  Corpus test;
  Corpus validation;
};

// Deterministic partition: train gets floor(N*train_fraction) comments,
// test floor(N*test_fraction), validation the remainder. Membership is a
// function of (seed, id) only — each id is hashed to a rank and the
// sorted rank order is cut at the exact sizes — so a reordered input
// file yields identical membership.
SplitResult split(const Corpus& corpus, const SplitSpec& spec);

// Stable 64-bit hash used by split; exposed for tests.
uint64_t stable_hash64(uint64_t seed, std::string_view data);

struct AgreementReport {
  size_t n_items = 0;
  double percent_agreement = 0.0;
  // nullopt when chance agreement p_e = 1 with imperfect observed
  // agreement; 1.0 whenever the annotations are identical.
  std::optional<double> cohen_kappa;
  // annotator A rows, annotator B columns
  std::array<std::array<uint64_t, kNumLabels>, kNumLabels> confusion{};
};

using Annotation = std::pair<std::string, PolitenessLabel>;

// Percent agreement and Cohen's kappa over two annotations of the same
// id set (order-insensitive; items are matched by id).
AgreementReport compute_agreement(const std::vector<Annotation>& a,
                                  const std::vector<Annotation>& b);

}  // namespace polite

#endif  // POLITENESS_CORPUS_HPP_
