#pragma once

#include "troplog/tree.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <tuple>

namespace troplog::testing {

struct E {
  VertexId a;
  VertexId b;
  std::optional<std::string> length;  // nullopt: symbolic
};

inline Tree tree(std::initializer_list<VertexId> vertices, std::initializer_list<E> edges,
                 std::initializer_list<std::pair<LegLabel, VertexId>> legs) {
  Tree t;
  t.vertices = vertices;
  for (const auto& e : edges)
    t.edges.push_back({{e.a, e.b}, e.length ? std::optional<Rational>(parse_rational(*e.length)) : std::nullopt});
  for (const auto& [label, at] : legs) t.legs.push_back({label, at});
  return t;
}

inline Tree star(int n) {
  Tree t;
  t.vertices = {0};
  for (int i = 1; i <= n; ++i) t.legs.push_back({i, 0});
  return t;
}

// v1 carries legs 1, 2 and v2 carries leg 3.
inline Tree path_tree(const std::string& length = "3") {
  return tree({1, 2}, {{1, 2, length}}, {{1, 1}, {2, 1}, {3, 2}});
}

}  // namespace troplog::testing
