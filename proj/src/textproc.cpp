#include "politeness/textproc.hpp"

#include <stdexcept>

#include "politeness/unicode.hpp"

namespace polite {

namespace {

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_devanagari_word(char32_t cp) {
  // Excludes danda (0964), double danda (0965), digits (0966-096F) and
  // the abbreviation sign (0970); keeps matras, nukta, virama, anusvara
  // and candrabindu word-internal so suffix evidence stays attached.
  return (cp >= 0x0900 && cp <= 0x0963) || (cp >= 0x0971 && cp <= 0x097F);
}

bool is_latin_letter(char32_t cp) {
  return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') ||
         (cp >= 0xC0 && cp <= 0xD6) || (cp >= 0xD8 && cp <= 0xF6) ||
         (cp >= 0xF8 && cp <= 0x24F);
}

bool is_digit(char32_t cp) {
  return (cp >= '0' && cp <= '9') || (cp >= 0x0966 && cp <= 0x096F);
}

char32_t lowercase_latin(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

// NFC excludes U+0958..U+095F from composition; fold the nukta pairs
// anyway so every spelling of क़/ज़/ड़/... lands on one code point.
char32_t nukta_composed(char32_t base) {
  switch (base) {
    case 0x0915: return 0x0958;  // क़
    case 0x0916: return 0x0959;  // ख़
    case 0x0917: return 0x095A;  // ग़
    case 0x091C: return 0x095B;  // ज़
    case 0x0921: return 0x095C;  // ड़
    case 0x0922: return 0x095D;  // ढ़
    case 0x092B: return 0x095E;  // फ़
    case 0x092F: return 0x095F;  // य़
    default: return 0;
  }
}

enum class CharClass { Devanagari, Latin, Digit, Space, Mark };

CharClass classify(char32_t cp) {
  if (is_whitespace(cp)) return CharClass::Space;
  if (is_devanagari_word(cp)) return CharClass::Devanagari;
  if (is_latin_letter(cp)) return CharClass::Latin;
  if (is_digit(cp)) return CharClass::Digit;
  return CharClass::Mark;
}

}  // namespace

std::string normalize(std::string_view raw) {
  std::vector<char32_t> cps = unicode::decode_utf8(raw);

  std::vector<char32_t> kept;
  kept.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp == 0x200C || cp == 0x200D || cp == 0xFEFF) continue;
    kept.push_back(cp);
  }

  kept = unicode::nfc(kept);

  std::vector<char32_t> out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (size_t i = 0; i < kept.size(); ++i) {
    char32_t cp = kept[i];
    if (is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (cp == 0x093C && !out.empty() && !pending_space) {
      if (char32_t comp = nukta_composed(out.back())) {
        out.back() = comp;
        continue;
      }
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(lowercase_latin(cp));
  }
  return unicode::encode_utf8(out);
}

std::vector<Token> tokenize(std::string_view normalized) {
  const std::vector<char32_t> cps = unicode::decode_utf8(normalized);
  std::vector<Token> tokens;

  size_t i = 0;
  const size_t n = cps.size();
  auto slice = [&](size_t a, size_t b) {
    std::string s;
    for (size_t k = a; k < b; ++k) unicode::append_utf8(s, cps[k]);
    return s;
  };

  while (i < n) {
    const CharClass cls = classify(cps[i]);
    if (cls == CharClass::Space) {
      ++i;
      continue;
    }
    if (cls == CharClass::Devanagari || cls == CharClass::Latin) {
      size_t j = i + 1;
      while (j < n && classify(cps[j]) == cls) ++j;
      tokens.push_back({slice(i, j), i, j, TokenKind::Word});
      i = j;
      continue;
    }
    if (cls == CharClass::Digit) {
      size_t j = i + 1;
      while (j < n && classify(cps[j]) == CharClass::Digit) ++j;
      tokens.push_back({slice(i, j), i, j, TokenKind::Number});
      i = j;
      continue;
    }
    const TokenKind kind = unicode::is_punct_or_symbol(cps[i])
                               ? TokenKind::Punctuation
                               : TokenKind::Other;
    tokens.push_back({slice(i, i + 1), i, i + 1, kind});
    ++i;
  }
  return tokens;
}

std::vector<std::string> ngrams(const std::vector<Token>& tokens, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("ngrams: n must be 1 or 2");
  std::vector<std::string> out;
  if (n == 1) {
    for (const Token& t : tokens)
      if (t.is_word()) out.push_back(t.surface);
    return out;
  }
  const Token* prev = nullptr;
  for (const Token& t : tokens) {
    if (!t.is_word()) continue;
    if (prev) out.push_back(prev->surface + kBigramSeparator + t.surface);
    prev = &t;
  }
  return out;
}

}  // namespace polite
