#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace temporal {

/// Unbounded integer used for every value and tick count.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// Exact rational used for clock frequencies and rates.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// floor(q) for any rational (rounds toward negative infinity).
Integer floor_of(const Rational& q);

/// Integer power base^exp.
Integer ipow(const Integer& base, unsigned exp);

/// Parses "n" or "n/d" into a rational. Throws temporal::Error(ParseError) on bad input.
Rational parse_rational(std::string_view text);

/// Parses a non-negative decimal integer. Throws temporal::Error(ParseError) on bad input.
Integer parse_natural(std::string_view text);

std::string to_string(const Integer& v);
std::string to_string(const Rational& q);

}  // namespace temporal
