#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace temporal {

enum class ErrorCode {
  MalformedCode,
  InvalidBase,
  DigitOverflow,
  ClockMismatch,
  InvalidClock,
  NegativeTick,
  EmptyInput,
  ModeMismatch,
  DuplicateValue,
  ZeroValue,
  MalformedChannel,
  InvalidArgument,
  StabilityViolation,
  GapCountMismatch,
  OffsetCountMismatch,
  MalformedStream,
  ValueLimit,
  ParseError,
  ValidationError,
  SimulationError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Every failure carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace temporal
