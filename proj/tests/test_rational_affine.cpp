#include "troplog/affine.hpp"
#include "troplog/error.hpp"
#include "troplog/rational.hpp"

#include <doctest.h>

using namespace troplog;

TEST_CASE("rationals parse and print in reduced p/q form") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-6/3")) == "-2");
  CHECK(format_rational(parse_rational("+7")) == "7");
  CHECK(format_rational(parse_rational("0/5")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
}

TEST_CASE("floor and ceil round toward the right side") {
  CHECK(floor(parse_rational("-3/2")) == -2);
  CHECK(ceil(parse_rational("-3/2")) == -1);
  CHECK(floor(parse_rational("7/2")) == 3);
  CHECK(ceil(Rational(4)) == 4);
  CHECK(to_int64(Rational(-9)) == -9);
  CHECK_THROWS_AS(to_int64(parse_rational("1/2")), Error);
}

TEST_CASE("affine expressions") {
  const AffineExpr c = AffineExpr::symbol("c");
  const AffineExpr l = AffineExpr::symbol("l_e0");
  const AffineExpr e = c + Rational(2) * l - AffineExpr(parse_rational("3/2"));
  CHECK(e.to_string() == "c + 2*l_e0 - 3/2");
  CHECK(AffineExpr::parse(e.to_string()) == e);
  CHECK(AffineExpr::parse("-l_e1 + 1/2*c") == AffineExpr::symbol("c", parse_rational("1/2")) - AffineExpr::symbol("l_e1"));
  CHECK((e - e).is_zero());
  CHECK(AffineExpr().to_string() == "0");
  CHECK(e.evaluate({{"c", Rational(1)}, {"l_e0", Rational(2)}}) == parse_rational("7/2"));
  CHECK_THROWS_AS(e.evaluate({{"c", Rational(1)}}), Error);
  CHECK(e.substitute({{"l_e0", c}}) == Rational(3) * c - AffineExpr(parse_rational("3/2")));
  CHECK(e.rename({{"l_e0", "l_e5"}}).coefficient("l_e5") == 2);
  CHECK_THROWS_AS(AffineExpr::parse("c +"), Error);
  CHECK_THROWS_AS(AffineExpr::parse("2**c"), Error);
}
