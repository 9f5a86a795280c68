#ifndef POLITENESS_ERROR_HPP_
#define POLITENESS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace polite {

// Malformed input data: bad records, unknown labels, corrupt model files.
// The CLI maps this to exit status 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or argument values. CLI exit status 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polite

#endif  // POLITENESS_ERROR_HPP_
