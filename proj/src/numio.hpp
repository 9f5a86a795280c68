#ifndef POLITENESS_SRC_NUMIO_HPP_
#define POLITENESS_SRC_NUMIO_HPP_

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace polite {

// Shortest decimal form that round-trips the exact binary value.
inline std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<uint64_t> parse_u64(std::string_view s) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace polite

#endif  // POLITENESS_SRC_NUMIO_HPP_
