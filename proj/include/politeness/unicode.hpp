#ifndef POLITENESS_UNICODE_HPP_
#define POLITENESS_UNICODE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal Unicode layer: UTF-8 codec and canonical normalization (NFC).
// Data tables are generated from the UCD by tools/gen_unicode_tables.py.

namespace polite::unicode {

// Decodes UTF-8; invalid sequences become U+FFFD (total function).
std::vector<char32_t> decode_utf8(std::string_view text);

std::string encode_utf8(const std::vector<char32_t>& codepoints);
void append_utf8(std::string& out, char32_t cp);

// Canonical decomposition + canonical ordering + canonical composition.
std::vector<char32_t> nfc(const std::vector<char32_t>& codepoints);
std::string nfc(std::string_view text);

uint8_t combining_class(char32_t cp);

// General category P* or S*.
bool is_punct_or_symbol(char32_t cp);

}  // namespace polite::unicode

#endif  // POLITENESS_UNICODE_HPP_
