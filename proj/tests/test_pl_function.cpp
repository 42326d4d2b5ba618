#include "oracles/balance_solver.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "troplog/error.hpp"
#include "troplog/pl_function.hpp"

#include <doctest.h>

#include <random>

using namespace troplog;
using namespace troplog::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

PLFunction zero_function(const Tree& t, VertexId base) {
  PLFunction f;
  f.tree = t;
  f.basepoint = base;
  f.edge_slopes.assign(t.edges.size(), 0);
  f.leg_slopes.assign(t.legs.size(), 0);
  return f;
}

}  // namespace

TEST_CASE("vertex values along a path") {
  PLFunction f = zero_function(tree({1, 2}, {{1, 2, "3"}}, {{1, 1}, {2, 2}}), 1);
  f.edge_slopes = {2};
  f.leg_slopes = {-2, 2};
  CHECK(value_at(f, 2) == AffineExpr(6));

  f.tree.edges[0].length.reset();
  f.base_value = AffineExpr::symbol("c");
  CHECK(value_at(f, 2) == AffineExpr::parse("c + 2*l_e0"));
  CHECK(f.slope(0, 2) == -2);

  PLFunction s = zero_function(star(3), 0);
  s.base_value = AffineExpr(5);
  CHECK(vertex_values(s).at(0) == AffineExpr(5));
}

TEST_CASE("multidegree and balancing") {
  PLFunction zero = zero_function(path_tree(), 1);
  CHECK(multidegree(zero).is_zero());
  CHECK(is_balanced(zero));

  PLFunction s = zero_function(star(3), 0);
  s.leg_slopes = {2, -1, -1};
  CHECK(multidegree(s).degrees.at(0) == 0);
  s.leg_slopes = {1, 0, 0};
  CHECK_FALSE(is_balanced(s));
  CHECK(multidegree(s).total() == 1);

  PLFunction p = zero_function(path_tree(), 1);
  p.leg_slopes = {2, -1, -1};
  p.edge_slopes = {-1};
  const Multidegree md = multidegree(p);
  CHECK(md.degrees.at(1) == 0);
  CHECK(md.degrees.at(2) == 0);
  CHECK(is_balanced(p));
  p.edge_slopes = {1};
  CHECK(multidegree(p).degrees.at(1) == 2);
  CHECK(multidegree(p).degrees.at(2) == -2);
  CHECK(multidegree(p).total() == 0);
}

TEST_CASE("contact orders") {
  ContactOrder s{{1, 1, -2}};
  CHECK(s.in_balanced_subgroup());
  CHECK(s.sum() == 0);
  CHECK_FALSE((s + ContactOrder{{0, 0, 1}}).in_balanced_subgroup());
  CHECK(ContactOrder{{0, 0}}.is_zero());
}

TEST_CASE("extend_from_leg_slopes examples") {
  const PLFunction s = extend_from_leg_slopes(star(2), ContactOrder{{1, -1}}, 0, AffineExpr(0));
  CHECK(s.edge_slopes.empty());
  CHECK(s.leg_slopes == std::vector<Slope>{1, -1});
  CHECK(is_balanced(s));

  const PLFunction p = extend_from_leg_slopes(path_tree(), ContactOrder{{2, -1, -1}}, 1, AffineExpr(0));
  CHECK(p.slope(0, 1) == -1);
  CHECK(is_balanced(p));
  CHECK(value_at(p, 2) == AffineExpr(-3));

  CHECK(code_of([] { extend_from_leg_slopes(path_tree(), ContactOrder{{1, 1, -1}}, 1, AffineExpr(0)); }) ==
        ErrorCode::NonZeroSum);
  CHECK(code_of([] { extend_from_leg_slopes(path_tree(), ContactOrder{{1, -1}}, 1, AffineExpr(0)); }) ==
        ErrorCode::LengthMismatch);
  CHECK(code_of([] { extend_from_leg_slopes(path_tree(), ContactOrder{{1, -1, 0}}, 9, AffineExpr(0)); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("extension agrees with the linear-solver oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const Tree t = random_concrete_tree(n, static_cast<int>(rng() % 8), rng);
    const ContactOrder sigma = random_zero_sum(n, rng);
    const VertexId base = t.vertices[rng() % t.vertices.size()];
    const PLFunction f = extend_from_leg_slopes(t, sigma, base, AffineExpr::symbol("c"));
    const auto solved = oracle::solve_balancing(t, sigma.slopes);
    REQUIRE(solved.consistent);
    CHECK(solved.rank == t.edges.size());
    for (std::size_t e = 0; e < t.edges.size(); ++e) CHECK(Rational(f.edge_slopes[e]) == Rational(solved.edge_slopes[e]));
    CHECK(is_balanced(f));
    CHECK(contact_order(f) == sigma);
  }
}

TEST_CASE("additivity of extensions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const Tree t = random_concrete_tree(n, static_cast<int>(rng() % 6), rng);
    const ContactOrder a = random_zero_sum(n, rng), b = random_zero_sum(n, rng);
    const VertexId x = t.vertices.front();
    const PLFunction fa = extend_from_leg_slopes(t, a, x, AffineExpr::symbol("c"));
    const PLFunction fb = extend_from_leg_slopes(t, b, x, AffineExpr(parse_rational("3/2")));
    const PLFunction sum = extend_from_leg_slopes(t, a + b, x, AffineExpr::parse("c + 3/2"));
    CHECK(add(fa, fb) == sum);
  }
}

TEST_CASE("validate_function catches structural problems") {
  PLFunction f = zero_function(path_tree(), 1);
  CHECK(validate_function(f).empty());
  f.edge_slopes.clear();
  CHECK_FALSE(validate_function(f).empty());
  f = zero_function(path_tree(), 42);
  CHECK_FALSE(validate_function(f).empty());
}
