#ifndef POLITENESS_FEATURES_HPP_
#define POLITENESS_FEATURES_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "politeness/corpus.hpp"
#include "politeness/structures.hpp"

namespace polite {

enum class FeaturePreset { Uni, UniBi, UniBiStruct };

std::string_view preset_name(FeaturePreset preset);
std::optional<FeaturePreset> preset_from_name(std::string_view name);

struct FeatureConfig {
  bool use_unigrams = true;
  bool use_bigrams = false;
  bool use_structures = false;
  uint32_t min_term_frequency = 2;
  bool l2_normalize = true;

  static FeatureConfig preset(FeaturePreset p);
  void validate() const;  // at least one feature family enabled

  // "uni", "uni_bi", "uni_bi_struct", or the same scheme for any other
  // combination of enabled families (e.g. "bi_struct").
  std::string name() const;

  bool operator==(const FeatureConfig&) const = default;
};

// Term index built from training data only. Index layout is
// [sorted unigrams][sorted bigrams][8 structure slots], so the unigram
// block occupies the same indices under every config that enables it.
struct Vocabulary {
  FeatureConfig config;
  std::vector<std::string> unigram_terms;  // lexicographic
  std::vector<std::string> bigram_terms;   // lexicographic
  uint32_t dimension = 0;
  std::string fingerprint;  // 16 hex chars, content hash over terms+config

  std::unordered_map<std::string, uint32_t> term_index;

  uint32_t n_terms() const {
    return static_cast<uint32_t>(unigram_terms.size() + bigram_terms.size());
  }
  uint32_t structure_slot(StructureKind kind) const {
    return n_terms() + static_cast<uint32_t>(kind);
  }
};

// Sparse vector; indices strictly increasing, values finite.
struct FeatureVector {
  std::vector<std::pair<uint32_t, double>> entries;
  uint32_t dimension = 0;

  double l2_norm() const;
};

// Keeps every enabled n-gram whose document frequency reaches
// min_term_frequency. Throws DataError if the result has dimension 0.
Vocabulary build_vocabulary(const Corpus& train, const FeatureConfig& config,
                            const Lexicon& lexicon);

// Raw term counts at vocabulary indices, structure counts in the slot
// block, then L2 normalization when configured. Out-of-vocabulary terms
// are dropped; an all-unknown text gives an empty sparse vector.
FeatureVector vectorize(const Comment& comment, const Vocabulary& vocab,
                        const Lexicon& lexicon);

std::vector<std::pair<FeatureVector, PolitenessLabel>> vectorize_labeled(
    const Corpus& corpus, const Vocabulary& vocab, const Lexicon& lexicon);

// --- persistence -----------------------------------------------------

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary load_vocabulary(const std::filesystem::path& path);

// One document per line: `id label idx:val ...` (label `-` when absent),
// preceded by a header with dimension and vocabulary fingerprint.
void write_sparse_features(const Corpus& corpus, const Vocabulary& vocab,
                           const Lexicon& lexicon,
                           const std::filesystem::path& path);

}  // namespace polite

#endif  // POLITENESS_FEATURES_HPP_
