#include "support/builders.hpp"
#include "support/generators.hpp"
#include "troplog/error.hpp"
#include "troplog/moduli.hpp"
#include "troplog/selfmap.hpp"

#include <doctest.h>

#include <algorithm>
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

std::vector<int> dimensions(const ConeComplex& c) {
  std::vector<int> out;
  for (const auto& cone : c.cones) out.push_back(cone.cone.dimension);
  std::sort(out.begin(), out.end());
  return out;
}

TropicalMapPoint map_point(const Tree& t, const std::vector<ContactOrder>& sigmas, VertexId base) {
  TropicalMapPoint p;
  p.tree = t;
  for (const auto& s : sigmas) {
    p.functions.push_back(extend_from_leg_slopes(t, s, base, AffineExpr(0)));
    p.contacts.push_back(s);
  }
  return p;
}

}  // namespace

TEST_CASE("moduli of curves") {
  const ConeComplex m3 = build_moduli_complex(3);
  REQUIRE(m3.cones.size() == 1);
  CHECK(m3.cones[0].cone.dimension == 0);

  const ConeComplex m4 = build_moduli_complex(4);
  CHECK(dimensions(m4) == std::vector<int>{0, 1, 1, 1});
  CHECK(m4.face_maps.size() == 3);
  for (const auto& fm : m4.face_maps) CHECK(m4.find(fm.face)->cone.dimension == 0);

  const ConeComplex m5 = build_moduli_complex(5);
  CHECK(m5.maximal_cones().size() == 15);
  for (const auto* c : m5.maximal_cones()) CHECK(c->cone.dimension == 2);
  CHECK(code_of([] { build_moduli_complex(2); }) == ErrorCode::UnstableRange);
}

TEST_CASE("moduli of maps") {
  const ConeComplex a = build_map_moduli(3, ContactOrder{{1, 1, -2}});
  REQUIRE(a.cones.size() == 1);
  CHECK(a.cones[0].cone.coordinate_names() == std::vector<std::string>{"c"});
  CHECK(a.cones[0].cone.coords[0].sign == CoordinateSign::Free);
  CHECK(a.cones[0].cone.dimension == 1);

  const ConeComplex b = build_map_moduli(4, ContactOrder{{1, 1, 1, -3}});
  CHECK(b.cones.size() == 4);
  CHECK(dimensions(b) == std::vector<int>{1, 2, 2, 2});
  CHECK(b.max_dimension() == 2);

  CHECK(build_map_moduli(1, ContactOrder{{0}}).cones.empty());
  CHECK(build_map_moduli(0, ContactOrder{{}}).cones.empty());
  CHECK(code_of([] { build_map_moduli(1, ContactOrder{{3}}); }) == ErrorCode::NonZeroSum);
  CHECK(code_of([] { build_map_moduli(2, ContactOrder{{1, -1}}); }) == ErrorCode::UnstableRange);
  CHECK(code_of([] { build_map_moduli(4, ContactOrder{{1, 1, -2}}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { build_map_moduli(4, ContactOrder{{1, 1, 1, -2}}); }) == ErrorCode::NonZeroSum);

  const ConeComplex two = build_map_moduli(4, std::vector<ContactOrder>{{{1, -1, 0, 0}}, {{0, 0, 2, -2}}});
  for (const auto* c : two.maximal_cones()) CHECK(c->cone.dimension == 3);
}

TEST_CASE("face maps of the map moduli contract one edge") {
  const ConeComplex c = build_map_moduli(5, ContactOrder{{1, 2, -3, 4, -4}});
  CHECK_FALSE(c.face_maps.empty());
  for (const auto& fm : c.face_maps) {
    const ModuliCone* small = c.find(fm.face);
    const ModuliCone* big = c.find(fm.cone);
    REQUIRE(small);
    REQUIRE(big);
    CHECK(small->cone.dimension + 1 == big->cone.dimension);
    CHECK(fm.inclusion.size() == small->cone.coords.size());
  }
}

TEST_CASE("splitting at a leg") {
  PLFunction constant = extend_from_leg_slopes(path_tree(), ContactOrder{{0, 0, 0}}, 1, AffineExpr(7));
  for (LegLabel i = 1; i <= 3; ++i) CHECK(splitting_at_leg(constant, i) == AffineExpr(7));

  const TropicalMapPoint p = map_point(path_tree(), {ContactOrder{{2, -1, -1}}}, 1);
  CHECK(splitting_at_leg(p, 3) == -3);
  CHECK(splitting_at_leg(p, 1) == 0);
  CHECK(code_of([&] { splitting_at_leg(p, 4); }) == ErrorCode::NoSuchLeg);

  const PLFunction f = extend_from_leg_slopes(path_tree(), ContactOrder{{2, -1, -1}}, 1, AffineExpr(1));
  const PLFunction g = extend_from_leg_slopes(path_tree(), ContactOrder{{-1, 4, -3}}, 1, AffineExpr(2));
  for (LegLabel i = 1; i <= 3; ++i) CHECK(splitting_at_leg(add(f, g), i) == splitting_at_leg(f, i) + splitting_at_leg(g, i));
}

TEST_CASE("product decomposition") {
  const IsomorphismReport r3 = product_decomposition(3, ContactOrder{{1, 1, -2}}, 1);
  CHECK(r3.certified);
  CHECK(r3.witnesses.empty());
  CHECK_FALSE(r3.notes.empty());

  const IsomorphismReport r4 = product_decomposition(4, ContactOrder{{1, 1, 1, -3}}, 1);
  CHECK(r4.certified);
  CHECK(r4.types_match);
  CHECK(r4.faces_compatible);
  CHECK(r4.face_maps_checked == 3);
  CHECK(r4.witnesses.size() == 3);
  bool saw_four = false;
  for (const auto& w : r4.witnesses) {
    CHECK(w.value_i != w.value_j);
    saw_four = saw_four || w.leg_j == 4;
  }
  CHECK(saw_four);
  for (const auto& cert : r4.cones) {
    CHECK(cert.unimodular);
    CHECK((cert.determinant == 1 || cert.determinant == -1));
  }

  CHECK(code_of([] { product_decomposition(2, ContactOrder{{1, -1}}, 1); }) == ErrorCode::UnstableRange);
  CHECK(code_of([] { product_decomposition(4, ContactOrder{{1, 1, 1, 1}}, 1); }) == ErrorCode::NonZeroSum);
  CHECK(code_of([] { product_decomposition(4, ContactOrder{{1, 1, 1, -3}}, 5); }) == ErrorCode::NoSuchLeg);
}

TEST_CASE("splitting witness for legs 1 and 4") {
  const ConeComplex maps = build_map_moduli(4, ContactOrder{{1, 1, 1, -3}});
  const auto w = find_splitting_witness(maps, 1, 4);
  REQUIRE(w);
  const ModuliCone* cone = maps.find(w->type_key);
  REQUIRE(cone);
  const TropicalMapPoint p = point_on_cone(*cone, w->point);
  CHECK(splitting_at_leg(p, 1) == w->value_i);
  CHECK(splitting_at_leg(p, 4) == w->value_j);
  CHECK(w->value_i != w->value_j);

  // With sigma = 0 every splitting is the constant c.
  CHECK_FALSE(find_splitting_witness(build_map_moduli(4, ContactOrder{{0, 0, 0, 0}}), 1, 4));
}

TEST_CASE("stabilize") {
  // Edge of length 2 then 3 through a bare 2-valent vertex with slope 0.
  const Tree t = tree({0, 1, 2}, {{0, 1, "2"}, {1, 2, "3"}}, {{1, 0}, {2, 0}, {3, 2}, {4, 2}});
  const TropicalMapPoint p = map_point(t, {ContactOrder{{1, -1, 2, -2}}}, 0);
  const TropicalMapPoint s = stabilize(p);
  REQUIRE(s.tree.edges.size() == 1);
  CHECK(*s.tree.edges[0].length == 5);
  CHECK(s.tree.vertices.size() == 2);
  CHECK(is_balanced(s.functions[0]));
  CHECK(stabilize(s) == s);

  // Nonzero through-slope: the 2-valent vertex stays.
  const TropicalMapPoint q = map_point(t, {ContactOrder{{1, 1, -1, -1}}}, 0);
  CHECK(stabilize(q).tree.vertices.size() == 3);

  // Already stable.
  const TropicalMapPoint r = map_point(path_tree(), {ContactOrder{{2, -1, -1}}}, 1);
  CHECK(stabilize(r) == r);

  // A bare leaf with slope 0 disappears; values survive the basepoint move.
  const Tree whisker = tree({0, 5}, {{0, 5, "4"}}, {{1, 0}, {2, 0}, {3, 0}});
  TropicalMapPoint w = map_point(whisker, {ContactOrder{{1, 2, -3}}}, 5);
  w.functions[0].base_value = AffineExpr(9);
  const TropicalMapPoint ws = stabilize(w);
  CHECK(ws.tree.vertices == std::vector<VertexId>{0});
  CHECK(value_at(ws.functions[0], 0) == AffineExpr(9));
}

TEST_CASE("self-map normal forms") {
  const SelfMapNormalForm id = classify_self_map(1, AffineExpr(0));
  CHECK(id.kernel_order == 1);
  CHECK(classify_self_map(3, AffineExpr(0)).kernel_order == 3);
  CHECK(classify_self_map(-3, AffineExpr(0)).kernel_order == 3);
  const SelfMapNormalForm zero = classify_self_map(0, AffineExpr(5));
  CHECK(zero.kernel_order == 0);
  CHECK(zero.stratum() == "constant");
  const SelfMapNormalForm c = compose(classify_self_map(2, AffineExpr(1)), classify_self_map(3, AffineExpr(4)));
  CHECK(c.degree == 6);
  CHECK(c.translation == AffineExpr(9));
  CHECK(c.apply(AffineExpr::symbol("t")) == AffineExpr::parse("6*t + 9"));
  CHECK(compose(id, c) == c);
  CHECK(compose(c, id) == c);
  CHECK_THROWS_AS(compose(classify_self_map(INT64_MAX, AffineExpr(0)), classify_self_map(2, AffineExpr(0))), Error);
}
