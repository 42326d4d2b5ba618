#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace troplog {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// Parses "p", "-p" or "p/q" (no whitespace). Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Reduced "p/q" form; integers are written without the "/1".
std::string format_rational(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

bool is_integer(const Rational& value);

/// Converts an integral rational to int64; throws Error(InvalidInput) on
/// non-integers or overflow.
std::int64_t to_int64(const Rational& value);

}  // namespace troplog
