#ifndef POLITENESS_STRUCTURES_HPP_
#define POLITENESS_STRUCTURES_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "politeness/textproc.hpp"

namespace polite {

// The eight conventionalized Hindi politeness structures. Declaration
// order fixes the S1..S8 codes and the feature-slot order.
enum class StructureKind : uint8_t {
  Formulaic = 0,    // S1: courtesy formulae (धन्यवाद, कृपया, ...)
  JiParticle = 1,   // S2: honorific particle जी after a name/noun
  Subjunctive = 2,  // S3: -ें/-े verb form at a clause end, copula excluded
  Conditional = 3,  // S4: अगर/यदि ... तो pair
  Deontic = 4,      // S5: obligation marker चाहिए
  Epistemic = 5,    // S6: ability marker, forms of सकना
  Minimizer = 6,    // S7: softeners ज़रा / थोड़ा
  Honorific = 7,    // S8: pronoun आप or -िए verb form
};

inline constexpr size_t kNumStructureKinds = 8;

inline constexpr std::array<StructureKind, kNumStructureKinds> kAllStructureKinds = {
    StructureKind::Formulaic,  StructureKind::JiParticle,
    StructureKind::Subjunctive, StructureKind::Conditional,
    StructureKind::Deontic,    StructureKind::Epistemic,
    StructureKind::Minimizer,  StructureKind::Honorific};

// "S1".."S8"
std::string_view kind_code(StructureKind kind);
std::optional<StructureKind> kind_from_code(std::string_view code);

struct StructureMatch {
  StructureKind kind;
  size_t token_start;  // index into the token list
  size_t token_end;    // exclusive
  std::string evidence;
};

struct StructureProfile {
  std::array<uint32_t, kNumStructureKinds> counts{};
  std::vector<StructureMatch> matches;

  uint32_t count(StructureKind kind) const {
    return counts[static_cast<size_t>(kind)];
  }
};

// Rule tables. All entries are stored normalized (same normalize() as
// the tokenizer input), so precomposed/decomposed spellings match.
struct Lexicon {
  std::unordered_set<std::string> formulaic;                           // S1
  std::unordered_set<std::string> ji_particles;                        // S2
  std::vector<std::string> subjunctive_suffixes;                       // S3
  std::vector<std::pair<std::string, std::string>> conditional_pairs;  // S4
  std::unordered_set<std::string> deontics;                            // S5
  std::unordered_set<std::string> epistemics;                          // S6
  std::unordered_set<std::string> minimizers;                          // S7
  std::unordered_set<std::string> honorific_pronouns;                  // S8
  std::vector<std::string> honorific_suffixes;                         // S8
  std::unordered_set<std::string> copula_exclusions;
  std::vector<std::string> impolite;  // reserved section, no detector yet

  // Every kind's table must be non-empty and no copula form may end in
  // an honorific suffix.
  void validate() const;
};

// The built-in rule tables.
const Lexicon& default_lexicon();

// Parses the lexicon file format: `[S1]`..`[S8]`, `[copula]`,
// `[impolite]` section headers; one entry per line; suffixes prefixed
// with `-`; `[S4]` entries are `opener=>correlative` pairs; `#` starts a
// comment line. When merge_defaults is set (the normal mode) the file
// extends the built-in tables.
Lexicon load_lexicon(const std::filesystem::path& path,
                     bool merge_defaults = true);
Lexicon parse_lexicon(std::string_view content, std::string_view name,
                      bool merge_defaults = true);

// Runs one detector over a token list.
std::vector<StructureMatch> detect(StructureKind kind,
                                   const std::vector<Token>& tokens,
                                   const Lexicon& lexicon);

// All eight detectors; counts are consistent with matches.
StructureProfile profile(const std::vector<Token>& tokens,
                         const Lexicon& lexicon);

}  // namespace polite

#endif  // POLITENESS_STRUCTURES_HPP_
