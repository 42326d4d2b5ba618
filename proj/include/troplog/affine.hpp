#pragma once

#include "troplog/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace troplog {

using Assignment = std::map<std::string, Rational>;

/// An affine expression `constant + sum coeff[s] * s` over named symbols with
/// exact rational coefficients. Zero coefficients are never stored, so
/// structural equality is mathematical equality.
class AffineExpr {
public:
  AffineExpr() = default;
  AffineExpr(Rational constant) : constant_(std::move(constant)) {}  // NOLINT
  AffineExpr(std::int64_t constant) : constant_(constant) {}        // NOLINT

  static AffineExpr symbol(const std::string& name, Rational coeff = Rational(1));

  /// Parses the format produced by `to_string`, e.g. "c + 2*l_e0 - 3/2".
  static AffineExpr parse(std::string_view text);

  const Rational& constant() const { return constant_; }
  const std::map<std::string, Rational>& terms() const { return terms_; }
  Rational coefficient(const std::string& name) const;

  bool is_constant() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && constant_ == 0; }
  std::set<std::string> symbols() const;

  AffineExpr& operator+=(const AffineExpr& other);
  AffineExpr& operator-=(const AffineExpr& other);
  AffineExpr& operator*=(const Rational& factor);

  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(AffineExpr a, const Rational& k) { return a *= k; }
  friend AffineExpr operator*(const Rational& k, AffineExpr a) { return a *= k; }
  AffineExpr operator-() const { return *this * Rational(-1); }

  /// Replaces each symbol present in `values` by the given expression.
  AffineExpr substitute(const std::map<std::string, AffineExpr>& values) const;

  /// Evaluates with every symbol bound. Missing symbols throw Error(InvalidInput).
  Rational evaluate(const Assignment& point) const;

  /// Renames symbols; names absent from the map are kept.
  AffineExpr rename(const std::map<std::string, std::string>& names) const;

  std::string to_string() const;

  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;

private:
  Rational constant_{0};
  std::map<std::string, Rational> terms_;
};

}  // namespace troplog
