#ifndef POLITENESS_TEXTPROC_HPP_
#define POLITENESS_TEXTPROC_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polite {

enum class TokenKind { Word, Punctuation, Number, Other };

// A token over the normalized text. Offsets are code point indices into
// the normalized string; surface equals the slice [start, end).
struct Token {
  std::string surface;
  size_t start = 0;
  size_t end = 0;
  TokenKind kind = TokenKind::Other;

  bool is_word() const { return kind == TokenKind::Word; }
};

// Canonicalizes raw text:
//   * NFC, plus composition of the eight Devanagari nukta consonants
//     (क़ ख़ ग़ ज़ ड़ ढ़ फ़ य़) that NFC leaves decomposed by exclusion
//   * ZWJ / ZWNJ / BOM removed
//   * Latin letters lowercased (ASCII and Latin-1)
//   * whitespace runs collapsed to single spaces, ends stripped
// Total and idempotent.
std::string normalize(std::string_view raw);

// Splits normalized text into tokens. Word tokens are maximal same-script
// runs of Devanagari (letters, matras, nukta, virama, anusvara,
// candrabindu) or Latin letters; digit runs are numbers; every other
// non-space code point is its own token.
std::vector<Token> tokenize(std::string_view normalized);

// Separator used to join bigram halves; a control character that can
// never appear inside a word token.
inline constexpr char kBigramSeparator = '\x1F';

// Bag-of-n-gram strings over the word-token subsequence. n must be 1 or 2.
std::vector<std::string> ngrams(const std::vector<Token>& tokens, int n);

}  // namespace polite

#endif  // POLITENESS_TEXTPROC_HPP_
