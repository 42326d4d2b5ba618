#pragma once

#include "troplog/affine.hpp"

#include <string>
#include <vector>

namespace troplog {

enum class Relation { GreaterEqual, Greater, Equal };

std::string_view to_string(Relation rel);

/// `expr rel 0`.
struct Constraint {
  AffineExpr expr;
  Relation rel = Relation::GreaterEqual;

  static Constraint ge(AffineExpr e) { return {std::move(e), Relation::GreaterEqual}; }
  static Constraint gt(AffineExpr e) { return {std::move(e), Relation::Greater}; }
  static Constraint eq(AffineExpr e) { return {std::move(e), Relation::Equal}; }

  bool holds_at(const Assignment& point) const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

using System = std::vector<Constraint>;

struct FeasibilityResult {
  bool feasible = false;
  /// A rational point satisfying every constraint; one entry per coordinate.
  Assignment witness;
};

/// Exact rational feasibility by equality substitution followed by
/// Fourier-Motzkin elimination. Constraints may only mention `coords`;
/// anything else throws Error(InvalidInput).
FeasibilityResult check_feasible(const std::vector<std::string>& coords, const System& system);

/// Projects the solution set onto the coordinates not in `eliminated`.
/// Equalities are substituted away first, so the result is exact.
System project_out(const System& system, const std::vector<std::string>& eliminated);

/// Indices of `system`'s inequalities that hold with equality on the whole
/// (nonempty) solution set. Explicit equalities are not listed.
std::vector<std::size_t> implicit_equalities(const std::vector<std::string>& coords,
                                             const System& system);

/// Dimension of the solution set's affine hull; -1 when empty.
int affine_dimension(const std::vector<std::string>& coords, const System& system);

/// A point in the relative interior of the solution set.
FeasibilityResult relative_interior_point(const std::vector<std::string>& coords,
                                          const System& system);

/// Drops inequalities implied by the remaining ones. Equalities are kept.
System remove_redundant(const std::vector<std::string>& coords, const System& system);

/// True iff every solution of `inner` satisfies `outer`.
bool implies(const std::vector<std::string>& coords, const System& inner, const System& outer);

/// Same solution set.
bool equivalent(const std::vector<std::string>& coords, const System& a, const System& b);

}  // namespace troplog
