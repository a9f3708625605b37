#include "temporal/numeric.hpp"

#include "temporal/errors.hpp"


namespace temporal {

Integer floor_of(const Rational& q) {
  const Integer n = numerator_of(q);
  const Integer d = denominator_of(q);  // always positive
  Integer quotient = n / d;             // truncates toward zero
  if (n < 0 && quotient * d != n) {
    --quotient;
  }
  return quotient;
}

Integer ipow(const Integer& base, unsigned exp) {
  Integer result = 1;
  Integer square = base;
  while (exp != 0) {
    if (exp & 1U) result *= square;
    exp >>= 1U;
    if (exp != 0) square *= square;
  }
  return result;
}

Integer parse_natural(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorCode::ParseError, "expected a non-negative integer, got empty text");
  }
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::ParseError, "expected a non-negative integer, got '" + std::string(text) + "'");
    }
  }
  return Integer(std::string(text));
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_natural(text));
  }
  const Integer num = parse_natural(text.substr(0, slash));
  const Integer den = parse_natural(text.substr(slash + 1));
  if (den == 0) {
    throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Integer& v) { return v.str(); }

std::string to_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedCode: return "MalformedCode";
    case ErrorCode::InvalidBase: return "InvalidBase";
    case ErrorCode::DigitOverflow: return "DigitOverflow";
    case ErrorCode::ClockMismatch: return "ClockMismatch";
    case ErrorCode::InvalidClock: return "InvalidClock";
    case ErrorCode::NegativeTick: return "NegativeTick";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::DuplicateValue: return "DuplicateValue";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::MalformedChannel: return "MalformedChannel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::GapCountMismatch: return "GapCountMismatch";
    case ErrorCode::OffsetCountMismatch: return "OffsetCountMismatch";
    case ErrorCode::MalformedStream: return "MalformedStream";
    case ErrorCode::ValueLimit: return "ValueLimit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::SimulationError: return "SimulationError";
  }
  return "Unknown";
}

}  // namespace temporal
