#pragma once

#include <stdexcept>
#include <string>

namespace orbitmetric {

enum class ErrorKind {
  InvalidArgument,
  InsufficientTail,
  SizeLimit,
  NotBistochastic,
  DecompositionFailure,
  SamplingError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for every library failure; `kind()` tells callers
/// (and the CLI exit-code mapping) which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::InvalidArgument, message);
}

}  // namespace orbitmetric
