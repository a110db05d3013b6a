#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orderly {

enum class ErrorKind {
  InvalidSignature,
  UnknownSymbol,
  ArityMismatch,
  MalformedVariable,
  NotOrderly,
  NotAdmissible,
  IndexBeyondPrefix,
  UniverseViolation,
  AlphabetContainsVariable,
  WrongSignature,
  CongruenceViolation,
  UniverseOverflow,
  OddLength,
  NotInjective,
  ColoringMismatch,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; the kind is stable
// and is what the CLI maps to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orderly
