#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

enum class ErrorKind {
  UnsupportedField,
  InfiniteValuation,
  DimensionMismatch,
  NotZeroDimensional,
  Unsupported,
  PrecisionExhausted,
  OnDivisor,
  OnCycle,
  MissingGenerators,
  UnsupportedOrbit,
  EmptySample,
  Undefined,
  NoTarget,
  HypothesisViolation,
  NotSNC,
  InvalidInput,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dioph
