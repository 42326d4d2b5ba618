#pragma once

#include "troplog/affine.hpp"
#include "troplog/tree.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace troplog {

using Slope = std::int64_t;

/// Leg slopes of a map, entry i - 1 belonging to leg i. The balanced subgroup
/// consists of the vectors with coordinate sum zero.
struct ContactOrder {
  std::vector<Slope> slopes;

  std::size_t size() const { return slopes.size(); }
  Slope sum() const;
  bool in_balanced_subgroup() const { return sum() == 0; }
  bool is_zero() const;

  friend ContactOrder operator+(const ContactOrder& a, const ContactOrder& b);
  friend bool operator==(const ContactOrder&, const ContactOrder&) = default;
};

/// Integer-sloped piecewise-linear function on a tree.
///
/// Slopes are outgoing: traversing edge v -> w of length t the value grows by
/// slope(v -> w) * t. `edge_slopes[i]` is the slope from `edges[i].ends[0]`
/// to `edges[i].ends[1]`, which makes antisymmetry structural. Leg slopes
/// point toward infinity and `leg_slopes[i - 1]` belongs to leg i.
struct PLFunction {
  Tree tree;
  VertexId basepoint = 0;
  AffineExpr base_value;
  std::vector<Slope> edge_slopes;
  std::vector<Slope> leg_slopes;

  /// Slope of `edge` leaving `from` (which must be one of its ends).
  Slope slope(std::size_t edge, VertexId from) const;
  Slope leg_slope(LegLabel label) const;

  friend bool operator==(const PLFunction&, const PLFunction&) = default;
};

struct Multidegree {
  std::map<VertexId, Slope> degrees;

  Slope total() const;
  bool is_zero() const;

  friend bool operator==(const Multidegree&, const Multidegree&) = default;
};

/// Structural problems (missing slopes, unknown basepoint, invalid tree).
std::vector<std::string> validate_function(const PLFunction& f);

/// Value at every vertex, propagated from the basepoint along the tree.
/// Symbolic edge lengths yield affine expressions in the length symbols.
std::map<VertexId, AffineExpr> vertex_values(const PLFunction& f);

AffineExpr value_at(const PLFunction& f, VertexId v);

/// Per-vertex sum of the slopes of all edges and legs leaving the vertex.
Multidegree multidegree(const PLFunction& f);

bool is_balanced(const PLFunction& f);

ContactOrder contact_order(const PLFunction& f);

/// The unique balanced function on `tree` with leg slopes `sigma` and value
/// `base_value` at `basepoint`.
///
/// The slope on an edge directed v -> w is the sum of sigma over the legs on
/// w's side of the edge; sweeping a breadth-first order backwards
/// accumulates those sums.
/// Throws Error(LengthMismatch) if sigma does not have one entry per leg,
/// Error(NonZeroSum) if sigma does not sum to zero.
PLFunction extend_from_leg_slopes(const Tree& tree, const ContactOrder& sigma,
                                  VertexId basepoint, const AffineExpr& base_value);

/// Pointwise sum; both functions must live on the same tree. The result is
/// based at `f`'s basepoint.
PLFunction add(const PLFunction& f, const PLFunction& g);

}  // namespace troplog
