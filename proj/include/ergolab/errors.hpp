#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ergolab {

// A mathematical hypothesis of the underlying theory failed (non-power-bounded
// operator, vanishing coefficient sum, ...). Distinct from input validation:
// the CLI maps this to exit code 3 and validation problems to exit code 2.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what, std::uint64_t witness_n = 0,
                           double witness_value = 0.0)
      : std::runtime_error(what),
        witness_n_(witness_n),
        witness_value_(witness_value) {}

  std::uint64_t witness_index() const { return witness_n_; }
  double witness_value() const { return witness_value_; }

 private:
  std::uint64_t witness_n_;
  double witness_value_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ergolab
