#pragma once

#include "troplog/feasibility.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace troplog {

using IntVector = std::vector<std::int64_t>;

/// A rational polyhedral cone of a fan, given by generators; the halfspace
/// description over the fan coordinates x1..xm is derived from them.
struct FanCone {
  std::vector<IntVector> generators;
  System halfspaces;
  int dimension = 0;

  friend bool operator==(const FanCone& a, const FanCone& b) { return a.generators == b.generators; }
};

struct Fan {
  int dim = 0;
  std::vector<FanCone> cones;
  /// Completeness as claimed by the producer; checked by validate_fan.
  bool complete = true;

  std::vector<std::string> coordinate_names() const;
  bool cone_contains(std::size_t cone, const std::vector<Rational>& x) const;

  friend bool operator==(const Fan&, const Fan&) = default;
};

/// Builds a fan from generator lists. Throws Error(InvalidInput) when a
/// generator has the wrong length.
Fan make_fan(int dim, const std::vector<std::vector<IntVector>>& cone_generators, bool complete = true);

/// {x <= 0}, {0}, {x >= 0} in R: the fan of P^1.
Fan p1_fan();

/// The fan of (P^1)^m: all 3^m products of {<= 0}, {0}, {>= 0}.
Fan p1_power_fan(int m);

/// One non-pointed cone equal to all of R^m.
Fan trivial_fan(int m);

struct FanReport {
  std::vector<std::string> non_face_intersections;
  std::vector<std::string> coverage_gaps;
  /// Whether the cones cover R^m (decided for m <= 2 only).
  bool complete = false;

  bool ok() const { return non_face_intersections.empty() && coverage_gaps.empty(); }
};

/// Checks that cones meet in common faces and, when completeness is claimed,
/// that they cover the ambient space. Throws Error(UnsupportedDimension) if
/// completeness is claimed for m > 2.
FanReport validate_fan(const Fan& fan);

}  // namespace troplog
