#include "troplog/rational.hpp"

#include "troplog/error.hpp"

#include <cctype>
#include <limits>

namespace troplog {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw Error(ErrorCode::ParseError, "not a rational: \"" + std::string(text) + "\"");
  Integer n{std::string(num)};
  Integer d = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den));
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator: \"" + std::string(text) + "\"");
  if (!text.empty() && text.front() == '-') n = -n;
  return Rational(n, d);
}

std::string format_rational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Integer floor(const Rational& value) {
  Integer n = numerator(value);
  Integer d = denominator(value);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Integer ceil(const Rational& value) { return -floor(-value); }

bool is_integer(const Rational& value) { return denominator(value) == 1; }

std::int64_t to_int64(const Rational& value) {
  if (!is_integer(value)) throw Error(ErrorCode::InvalidInput, "not an integer: " + format_rational(value));
  const Integer n = numerator(value);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::InvalidInput, "integer out of range: " + n.str());
  return n.convert_to<std::int64_t>();
}

}  // namespace troplog
