#include "politeness/structures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "politeness/error.hpp"

namespace polite {

namespace {

// Orthographic Devanagari renderings of the rule inventory, shipped in
// the same format load_lexicon() reads so the built-in and on-disk
// paths stay identical. Spelling variants (e.g. चाहिए/चाहिये, ज़रा/जरा)
// are deliberate: CMC text mixes them freely.
constexpr std::string_view kDefaultLexiconText = R"(# built-in rule tables
[S1]
शुभकामनाएं
शुभकामनायें
बधाई
शुक्रिया
धन्यवाद
आभार
कृपया

[S2]
जी

[S3]
-ें
-े

[S4]
अगर=>तो
यदि=>तो

[S5]
चाहिए
चाहिये

[S6]
सकता
सकती
सकते
सकें
सकूं
सकूँ
सको
सका
सकी
सकना

[S7]
ज़रा
जरा
थोड़ा
थोडा

[S8]
आप
-िए
-िये
-इए
-इये
-िएगा
-इएगा
-ीजिए
-ीजिये

[copula]
है
हैं
हो
हूं
हूँ
थे
था
थी

[impolite]
)";

bool ends_with_suffix(std::string_view surface, std::string_view suffix) {
  return surface.size() > suffix.size() &&
         surface.substr(surface.size() - suffix.size()) == suffix;
}

bool is_sentence_final(const Token& t) {
  return t.kind == TokenKind::Punctuation &&
         (t.surface == "।" || t.surface == "॥" || t.surface == "." ||
          t.surface == "?" || t.surface == "!");
}

void add_entry(std::vector<std::string>& list, std::string entry) {
  if (std::find(list.begin(), list.end(), entry) == list.end())
    list.push_back(std::move(entry));
}

struct Matcher {
  const Lexicon& lex;
  const std::vector<Token>& tokens;
  std::vector<StructureMatch>& out;

  void word_match(StructureKind kind, size_t i) {
    out.push_back({kind, i, i + 1, tokens[i].surface});
  }

  bool is_conditional_marker(const Token& t) const {
    if (!t.is_word()) return false;
    for (const auto& [opener, correlative] : lex.conditional_pairs)
      if (t.surface == opener || t.surface == correlative) return true;
    return false;
  }

  // boundary for the clause-segment approximation used by S3
  bool is_clause_boundary(size_t i) const {
    if (i >= tokens.size()) return true;
    const Token& t = tokens[i];
    return t.kind == TokenKind::Punctuation || is_conditional_marker(t);
  }

  void formulaic() {
    for (size_t i = 0; i < tokens.size(); ++i)
      if (tokens[i].is_word() && lex.formulaic.count(tokens[i].surface))
        word_match(StructureKind::Formulaic, i);
  }

  // जी fires unless it is the first word of its sentence segment; a bare
  // utterance-initial जी is usually the interjection "yes".
  void ji_particle() {
    bool word_seen = false;
    for (size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (is_sentence_final(t)) {
        word_seen = false;
        continue;
      }
      if (!t.is_word()) continue;
      if (word_seen && lex.ji_particles.count(t.surface))
        word_match(StructureKind::JiParticle, i);
      word_seen = true;
    }
  }

  void subjunctive() {
    for (size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (!t.is_word()) continue;
      if (lex.copula_exclusions.count(t.surface)) continue;
      bool has_suffix = false;
      for (const std::string& suf : lex.subjunctive_suffixes)
        if (ends_with_suffix(t.surface, suf)) {
          has_suffix = true;
          break;
        }
      if (!has_suffix) continue;
      if (is_clause_boundary(i + 1))
        word_match(StructureKind::Subjunctive, i);
    }
  }

  // one match per opener, paired with the nearest following correlative
  void conditional() {
    for (size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (!t.is_word()) continue;
      for (const auto& [opener, correlative] : lex.conditional_pairs) {
        if (t.surface != opener) continue;
        for (size_t j = i + 1; j < tokens.size(); ++j) {
          if (tokens[j].is_word() && tokens[j].surface == correlative) {
            out.push_back({StructureKind::Conditional, i, j + 1,
                           opener + "…" + correlative});
            break;
          }
        }
        break;  // a token matches at most one opener
      }
    }
  }

  void literal_set(StructureKind kind,
                   const std::unordered_set<std::string>& set) {
    for (size_t i = 0; i < tokens.size(); ++i)
      if (tokens[i].is_word() && set.count(tokens[i].surface))
        word_match(kind, i);
  }

  void honorific() {
    for (size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (!t.is_word()) continue;
      if (lex.honorific_pronouns.count(t.surface)) {
        word_match(StructureKind::Honorific, i);
        continue;
      }
      for (const std::string& suf : lex.honorific_suffixes)
        if (ends_with_suffix(t.surface, suf)) {
          word_match(StructureKind::Honorific, i);
          break;
        }
    }
  }
};

}  // namespace

std::string_view kind_code(StructureKind kind) {
  static constexpr std::array<std::string_view, kNumStructureKinds> codes = {
      "S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8"};
  return codes[static_cast<size_t>(kind)];
}

std::optional<StructureKind> kind_from_code(std::string_view code) {
  for (StructureKind k : kAllStructureKinds)
    if (kind_code(k) == code) return k;
  return std::nullopt;
}

void Lexicon::validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok)
      throw DataError("lexicon: empty list for required kind " +
                      std::string(what));
  };
  require(!formulaic.empty(), "S1");
  require(!ji_particles.empty(), "S2");
  require(!subjunctive_suffixes.empty(), "S3");
  require(!conditional_pairs.empty(), "S4");
  require(!deontics.empty(), "S5");
  require(!epistemics.empty(), "S6");
  require(!minimizers.empty(), "S7");
  require(!honorific_pronouns.empty() || !honorific_suffixes.empty(), "S8");
  if (copula_exclusions.empty())
    throw DataError("lexicon: copula exclusion list must not be empty");
  for (const std::string& cop : copula_exclusions)
    for (const std::string& suf : honorific_suffixes)
      if (ends_with_suffix(cop, suf))
        throw DataError("lexicon: copula form '" + cop +
                        "' collides with honorific suffix '-" + suf + "'");
}

Lexicon parse_lexicon(std::string_view content, std::string_view name,
                      bool merge_defaults) {
  Lexicon lex = merge_defaults ? default_lexicon() : Lexicon{};

  enum class Section { None, S1, S2, S3, S4, S5, S6, S7, S8, Copula, Impolite };
  Section section = Section::None;

  auto fail = [&](size_t line_no, const std::string& msg) -> void {
    std::ostringstream os;
    os << name << ":" << line_no << ": " << msg;
    throw DataError(os.str());
  };

  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= content.size()) {
    const size_t eol = content.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? content.substr(pos)
                                : content.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? content.size() + 1 : eol + 1;
    ++line_no;

    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
      line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const std::string_view key = line.substr(1, line.size() - 2);
      if (key == "S1") section = Section::S1;
      else if (key == "S2") section = Section::S2;
      else if (key == "S3") section = Section::S3;
      else if (key == "S4") section = Section::S4;
      else if (key == "S5") section = Section::S5;
      else if (key == "S6") section = Section::S6;
      else if (key == "S7") section = Section::S7;
      else if (key == "S8") section = Section::S8;
      else if (key == "copula") section = Section::Copula;
      else if (key == "impolite") section = Section::Impolite;
      else fail(line_no, "unknown structure kind '" + std::string(key) + "'");
      continue;
    }
    if (section == Section::None)
      fail(line_no, "entry before any section header");

    const bool is_suffix = line.front() == '-';
    std::string entry = normalize(is_suffix ? line.substr(1) : line);
    if (entry.empty()) fail(line_no, "empty entry");
    if (entry.find(' ') != std::string::npos)
      fail(line_no, "entry contains whitespace");

    const size_t arrow = entry.find("=>");
    if (section == Section::S4) {
      if (is_suffix) fail(line_no, "suffix entry not allowed in [S4]");
      if (arrow == std::string::npos || arrow == 0 ||
          arrow + 2 >= entry.size())
        fail(line_no, "expected opener=>correlative pair");
      lex.conditional_pairs.emplace_back(entry.substr(0, arrow),
                                         entry.substr(arrow + 2));
      auto& pairs = lex.conditional_pairs;
      if (std::count(pairs.begin(), pairs.end(), pairs.back()) > 1)
        pairs.pop_back();
      continue;
    }
    if (arrow != std::string::npos)
      fail(line_no, "pair syntax only allowed in [S4]");
    if (is_suffix && section != Section::S3 && section != Section::S8)
      fail(line_no, "suffix entry not allowed in this section");

    switch (section) {
      case Section::S1: lex.formulaic.insert(std::move(entry)); break;
      case Section::S2: lex.ji_particles.insert(std::move(entry)); break;
      case Section::S3:
        if (!is_suffix) fail(line_no, "[S3] takes suffix entries (-...)");
        add_entry(lex.subjunctive_suffixes, std::move(entry));
        break;
      case Section::S5: lex.deontics.insert(std::move(entry)); break;
      case Section::S6: lex.epistemics.insert(std::move(entry)); break;
      case Section::S7: lex.minimizers.insert(std::move(entry)); break;
      case Section::S8:
        if (is_suffix)
          add_entry(lex.honorific_suffixes, std::move(entry));
        else
          lex.honorific_pronouns.insert(std::move(entry));
        break;
      case Section::Copula:
        lex.copula_exclusions.insert(std::move(entry));
        break;
      case Section::Impolite:
        add_entry(lex.impolite, std::move(entry));
        break;
      default: break;
    }
  }

  lex.validate();
  return lex;
}

const Lexicon& default_lexicon() {
  static const Lexicon lex =
      parse_lexicon(kDefaultLexiconText, "<builtin>", /*merge_defaults=*/false);
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path, bool merge_defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str(), path.string(), merge_defaults);
}

std::vector<StructureMatch> detect(StructureKind kind,
                                   const std::vector<Token>& tokens,
                                   const Lexicon& lexicon) {
  std::vector<StructureMatch> out;
  Matcher m{lexicon, tokens, out};
  switch (kind) {
    case StructureKind::Formulaic: m.formulaic(); break;
    case StructureKind::JiParticle: m.ji_particle(); break;
    case StructureKind::Subjunctive: m.subjunctive(); break;
    case StructureKind::Conditional: m.conditional(); break;
    case StructureKind::Deontic:
      m.literal_set(StructureKind::Deontic, lexicon.deontics);
      break;
    case StructureKind::Epistemic:
      m.literal_set(StructureKind::Epistemic, lexicon.epistemics);
      break;
    case StructureKind::Minimizer:
      m.literal_set(StructureKind::Minimizer, lexicon.minimizers);
      break;
    case StructureKind::Honorific: m.honorific(); break;
  }
  return out;
}

StructureProfile profile(const std::vector<Token>& tokens,
                         const Lexicon& lexicon) {
  StructureProfile p;
  for (StructureKind kind : kAllStructureKinds) {
    std::vector<StructureMatch> matches = detect(kind, tokens, lexicon);
    p.counts[static_cast<size_t>(kind)] = static_cast<uint32_t>(matches.size());
    p.matches.insert(p.matches.end(),
                     std::make_move_iterator(matches.begin()),
                     std::make_move_iterator(matches.end()));
  }
  return p;
}

}  // namespace polite
