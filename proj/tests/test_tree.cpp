#include "oracles/split_systems.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "troplog/error.hpp"
#include "troplog/tree.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace troplog;
using namespace troplog::testing;
using Kind = ValidationIssue::Kind;

namespace {

std::set<std::uint32_t> splits_of(const Tree& t) {
  std::set<std::uint32_t> out;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    std::uint32_t mask = 0;
    for (LegLabel l : edge_split(t, e)) mask |= 1u << (l - 1);
    out.insert(mask);
  }
  return out;
}

}  // namespace

TEST_CASE("validate_tree") {
  CHECK(validate_tree(star(3)).ok());

  const auto negative = validate_tree(tree({0, 1}, {{0, 1, "-1"}}, {{1, 0}, {2, 1}}));
  CHECK_FALSE(negative.ok());
  CHECK(negative.has(Kind::NegativeLength));

  const auto triangle = validate_tree(tree({0, 1, 2}, {{0, 1, "1"}, {1, 2, "1"}, {2, 0, "1"}}, {{1, 0}}));
  CHECK(triangle.has(Kind::Cycle));

  CHECK(validate_tree(tree({0, 1}, {{0, 1, "0"}}, {{1, 0}})).has(Kind::ZeroLength));
  CHECK(validate_tree(tree({0, 1}, {}, {{1, 0}})).has(Kind::Disconnected));
  CHECK(validate_tree(tree({0}, {}, {{1, 0}, {1, 0}})).has(Kind::DuplicateLegLabel));
  CHECK(validate_tree(tree({0}, {}, {{1, 0}, {3, 0}})).has(Kind::LegLabelRange));
  CHECK(validate_tree(tree({0}, {{0, 0, "1"}}, {{1, 0}})).has(Kind::SelfLoop));
  CHECK(validate_tree(tree({0}, {}, {{1, 4}})).has(Kind::UnknownVertex));
  CHECK(validate_tree(tree({0, 0}, {}, {{1, 0}})).has(Kind::DuplicateVertex));
  CHECK(validate_tree(Tree{}).has(Kind::EmptyTree));
  // Symbolic lengths are fine.
  CHECK(validate_tree(path_tree("1")).ok());
  CHECK(validate_tree(tree({1, 2}, {{1, 2, std::nullopt}}, {{1, 1}, {2, 2}})).ok());
}

TEST_CASE("validate_tree reports every problem at once") {
  const auto r = validate_tree(tree({0, 1, 2}, {{0, 1, "-1"}, {1, 2, "1"}, {2, 0, "1"}}, {{1, 0}, {1, 2}}));
  CHECK(r.has(Kind::NegativeLength));
  CHECK(r.has(Kind::Cycle));
  CHECK(r.has(Kind::DuplicateLegLabel));
}

TEST_CASE("contract_edge") {
  const Tree two = tree({0, 1}, {{0, 1, "2"}}, {{1, 0}, {2, 1}, {3, 1}});
  const Tree one = contract_edge(two, 0);
  CHECK(one.vertices.size() == 1);
  CHECK(one.edges.empty());
  CHECK(one.legs_at(one.vertices.front()).size() == 3);

  const Tree path3 = tree({0, 1, 2}, {{0, 1, "1"}, {1, 2, "5/2"}}, {{1, 0}, {2, 2}});
  const Tree contracted = contract_edge(path3, 1);
  CHECK(contracted.vertices.size() == 2);
  CHECK(contracted.edges.size() == 1);
  CHECK(*contracted.edges[0].length == 1);
  CHECK(validate_tree(contracted).ok());
  CHECK_THROWS_AS(contract_edge(path3, 2), Error);
  try {
    contract_edge(path3, 7);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSuchEdge);
  }
}

TEST_CASE("contraction keeps legs and drops exactly one edge") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Tree t = random_concrete_tree(6, 4, rng);
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      const Tree c = contract_edge(t, e);
      CHECK(c.edges.size() + 1 == t.edges.size());
      CHECK(c.legs.size() == t.legs.size());
      CHECK(validate_tree(c).ok());
    }
  }
}

TEST_CASE("stable enumeration for small n") {
  CHECK(enumerate_tree_types(3).size() == 1);
  CHECK(enumerate_tree_types(4).size() == 4);
  CHECK(enumerate_tree_types(5).size() == 26);
  CHECK(enumerate_tree_types(5, {.stable_only = true, .trivalent_only = true}).size() == 15);
  CHECK_THROWS_AS(enumerate_tree_types(2), Error);
  try {
    enumerate_tree_types(2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnstableRange);
  }
}

TEST_CASE("enumerated types are valid, sorted and distinct") {
  for (int n = 3; n <= 6; ++n) {
    const auto types = enumerate_tree_types(n);
    std::set<std::string> keys;
    for (const auto& t : types) {
      CHECK(validate_tree(t.tree).ok());
      CHECK(t.tree.legs.size() == static_cast<std::size_t>(n));
      for (VertexId v : t.tree.vertices) CHECK(t.tree.valence(v) >= 3);
      CHECK(canonical_key(t.tree) == t.key);
      keys.insert(t.key);
    }
    CHECK(keys.size() == types.size());
    CHECK(std::is_sorted(types.begin(), types.end()));
  }
}

TEST_CASE("stable types match compatible split systems") {
  for (int n = 3; n <= 7; ++n) {
    std::set<oracle::SplitSet> expected;
    for (const auto& s : oracle::all_split_systems(n)) expected.insert(s);
    std::set<oracle::SplitSet> got;
    for (const auto& t : enumerate_tree_types(n)) got.insert(splits_of(t.tree));
    CHECK(got == expected);
  }
}

TEST_CASE("canonical keys ignore vertex names, edge order and lengths") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Tree t = random_concrete_tree(3 + static_cast<int>(rng() % 6), static_cast<int>(rng() % 6), rng);
    Tree u = t;
    std::map<VertexId, VertexId> rename;
    std::vector<VertexId> fresh(t.vertices.size());
    std::iota(fresh.begin(), fresh.end(), 1000);
    std::shuffle(fresh.begin(), fresh.end(), rng);
    for (std::size_t i = 0; i < t.vertices.size(); ++i) rename[t.vertices[i]] = fresh[i];
    for (auto& v : u.vertices) v = rename[v];
    for (auto& e : u.edges) {
      e.ends = {rename[e.ends[1]], rename[e.ends[0]]};
      e.length = random_length(rng);
    }
    for (auto& l : u.legs) l.at = rename[l.at];
    std::shuffle(u.edges.begin(), u.edges.end(), rng);
    std::shuffle(u.legs.begin(), u.legs.end(), rng);
    CHECK(canonical_key(u) == canonical_key(t));
    CHECK(combinatorial_type(u).tree == combinatorial_type(t).tree);
  }
}

TEST_CASE("canonical keys separate different leg placements") {
  const Tree a = tree({0, 1}, {{0, 1, "1"}}, {{1, 0}, {2, 0}, {3, 1}, {4, 1}});
  const Tree b = tree({0, 1}, {{0, 1, "1"}}, {{1, 0}, {3, 0}, {2, 1}, {4, 1}});
  CHECK(canonical_key(a) != canonical_key(b));
}

TEST_CASE("unstable enumeration with a vertex cap") {
  // One vertex, or two vertices joined by an edge with the legs split any way.
  const auto one = enumerate_tree_types(1, {.stable_only = false, .max_vertices = 2});
  // n=1: star; edge with leg on one side (other end bare).
  CHECK(one.size() == 2);
  const auto two = enumerate_tree_types(2, {.stable_only = false, .max_vertices = 2});
  // star; {1,2}|{}; {1}|{2}.
  CHECK(two.size() == 3);
  CHECK(enumerate_tree_types(3, {.stable_only = false, .max_vertices = 1}).size() == 1);
  CHECK_THROWS_AS(enumerate_tree_types(3, {.stable_only = false}), Error);
  CHECK_THROWS_AS(enumerate_tree_types(0, {.stable_only = false, .max_vertices = 3}), Error);
}
