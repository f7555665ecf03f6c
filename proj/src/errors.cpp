#include "orbitmetric/errors.hpp"

namespace orbitmetric {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InsufficientTail: return "insufficient-tail";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::NotBistochastic: return "not-bistochastic";
    case ErrorKind::DecompositionFailure: return "decomposition-failure";
    case ErrorKind::SamplingError: return "sampling-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace orbitmetric
