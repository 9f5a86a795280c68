#include "politeness/unicode.hpp"

#include <algorithm>

namespace polite::unicode {

namespace {

struct CccEntry {
  char32_t cp;
  uint8_t ccc;
};
struct DecompEntry {
  char32_t cp;
  uint32_t offset;
  uint8_t len;
};
struct CompEntry {
  uint64_t key;  // (starter << 21) | combining
  char32_t composed;
};
struct CpRange {
  char32_t lo;
  char32_t hi;
};

#include "unicode_tables.inc"

// Hangul syllable arithmetic (UAX #15).
constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161,
                   kTBase = 0x11A7;
constexpr int kLCount = 19, kVCount = 21, kTCount = 28;
constexpr int kNCount = kVCount * kTCount;
constexpr int kSCount = kLCount * kNCount;

const DecompEntry* find_decomp(char32_t cp) {
  auto it = std::lower_bound(
      std::begin(kDecomp), std::end(kDecomp), cp,
      [](const DecompEntry& e, char32_t c) { return e.cp < c; });
  if (it != std::end(kDecomp) && it->cp == cp) return it;
  return nullptr;
}

char32_t compose_pair(char32_t a, char32_t b) {
  // Hangul L+V and LV+T
  if (a >= kLBase && a < kLBase + kLCount && b >= kVBase &&
      b < kVBase + kVCount) {
    return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
  }
  if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 &&
      b > kTBase && b < kTBase + kTCount) {
    return a + (b - kTBase);
  }
  const uint64_t key = (static_cast<uint64_t>(a) << 21) | b;
  auto it = std::lower_bound(std::begin(kComp), std::end(kComp), key,
                             [](const CompEntry& e, uint64_t k) { return e.key < k; });
  if (it != std::end(kComp) && it->key == key) return it->composed;
  return 0;
}

void append_decomposed(std::vector<char32_t>& out, char32_t cp) {
  if (cp >= kSBase && cp < kSBase + kSCount) {
    const int s = static_cast<int>(cp - kSBase);
    out.push_back(kLBase + s / kNCount);
    out.push_back(kVBase + (s % kNCount) / kTCount);
    if (s % kTCount != 0) out.push_back(kTBase + s % kTCount);
    return;
  }
  if (const DecompEntry* e = find_decomp(cp)) {
    for (uint32_t i = 0; i < e->len; ++i) out.push_back(kDecompPool[e->offset + i]);
    return;
  }
  out.push_back(cp);
}

}  // namespace

uint8_t combining_class(char32_t cp) {
  auto it = std::lower_bound(std::begin(kCcc), std::end(kCcc), cp,
                             [](const CccEntry& e, char32_t c) { return e.cp < c; });
  if (it != std::end(kCcc) && it->cp == cp) return it->ccc;
  return 0;
}

bool is_punct_or_symbol(char32_t cp) {
  auto it = std::upper_bound(std::begin(kPunctSym), std::end(kPunctSym), cp,
                             [](char32_t c, const CpRange& r) { return c < r.lo; });
  if (it == std::begin(kPunctSym)) return false;
  --it;
  return cp >= it->lo && cp <= it->hi;
}

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    const uint8_t b0 = static_cast<uint8_t>(text[i]);
    char32_t cp = 0xFFFD;
    size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      ++i;
      out.push_back(0xFFFD);
      continue;
    }
    if (len > 1) {
      if (i + len > n) {
        ++i;
        out.push_back(0xFFFD);
        continue;
      }
      bool ok = true;
      for (size_t k = 1; k < len; ++k) {
        const uint8_t bk = static_cast<uint8_t>(text[i + k]);
        if ((bk & 0xC0) != 0x80) {
          ok = false;
          break;
        }
        cp = (cp << 6) | (bk & 0x3F);
      }
      // overlongs, surrogates, out of range
      if (!ok || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF) ||
          (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
          (len == 4 && cp < 0x10000)) {
        ++i;
        out.push_back(0xFFFD);
        continue;
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(const std::vector<char32_t>& codepoints) {
  std::string out;
  out.reserve(codepoints.size() * 3);
  for (char32_t cp : codepoints) append_utf8(out, cp);
  return out;
}

std::vector<char32_t> nfc(const std::vector<char32_t>& codepoints) {
  // 1. full canonical decomposition
  std::vector<char32_t> buf;
  buf.reserve(codepoints.size() + 8);
  for (char32_t cp : codepoints) append_decomposed(buf, cp);

  // 2. canonical ordering: stable-sort runs of nonzero ccc
  for (size_t i = 0; i < buf.size();) {
    if (combining_class(buf[i]) == 0) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < buf.size() && combining_class(buf[j]) != 0) ++j;
    std::stable_sort(buf.begin() + i, buf.begin() + j,
                     [](char32_t a, char32_t b) {
                       return combining_class(a) < combining_class(b);
                     });
    i = j;
  }

  // 3. canonical composition
  std::vector<char32_t> out;
  out.reserve(buf.size());
  constexpr size_t npos = static_cast<size_t>(-1);
  size_t starter = npos;
  uint8_t prev_cc = 0;
  for (char32_t c : buf) {
    const uint8_t cc = combining_class(c);
    if (starter != npos) {
      const bool adjacent = (out.size() == starter + 1);
      if (adjacent || prev_cc < cc) {
        if (char32_t comp = compose_pair(out[starter], c)) {
          out[starter] = comp;
          continue;
        }
      }
    }
    if (cc == 0) starter = out.size();
    prev_cc = cc;
    out.push_back(c);
  }
  return out;
}

std::string nfc(std::string_view text) {
  return encode_utf8(nfc(decode_utf8(text)));
}

}  // namespace polite::unicode
