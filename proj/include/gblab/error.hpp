#pragma once

#include <stdexcept>
#include <string>

namespace gblab {

enum class ErrorCode {
  EvenCoefficient,
  ResidueOutOfRange,
  NotCoprime,
  InvalidPolynomial,
  InvalidConfig,
  LimitTooLarge,
  BoundsExceeded,
  ArrayBudgetExceeded,
  ArcsOverlap,
  ResolutionTooLow,
  Overflow,
  CacheFormat,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this type; the code tells the
// caller which invariant was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gblab
