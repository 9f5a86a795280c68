#ifndef POLITENESS_SRC_FNV64_HPP_
#define POLITENESS_SRC_FNV64_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace polite {

// Incremental FNV-1a, used for content fingerprints and file checksums.
class Fnv64 {
 public:
  Fnv64& update(std::string_view data) {
    for (char c : data) {
      state_ ^= static_cast<uint8_t>(c);
      state_ *= 1099511628211ULL;
    }
    return *this;
  }
  Fnv64& update(uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= static_cast<uint8_t>(v >> (8 * i));
      state_ *= 1099511628211ULL;
    }
    return *this;
  }
  uint64_t value() const { return state_; }

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i)
      out[15 - i] = digits[(state_ >> (4 * i)) & 0xF];
    return out;
  }

 private:
  uint64_t state_ = 1469598103934665603ULL;
};

}  // namespace polite

#endif  // POLITENESS_SRC_FNV64_HPP_
