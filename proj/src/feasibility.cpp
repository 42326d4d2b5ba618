#include "troplog/feasibility.hpp"

#include "troplog/error.hpp"
#include "troplog/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace troplog {

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::GreaterEqual: return ">=";
    case Relation::Greater: return ">";
    case Relation::Equal: return "=";
  }
  return "?";
}

bool Constraint::holds_at(const Assignment& point) const {
  const Rational v = expr.evaluate(point);
  switch (rel) {
    case Relation::GreaterEqual: return v >= 0;
    case Relation::Greater: return v > 0;
    case Relation::Equal: return v == 0;
  }
  return false;
}

namespace {

// Dense row `coeffs . x + constant (>=|>|=) 0` over indexed variables.
struct Row {
  std::vector<Rational> coeffs;
  Rational constant;
  Relation rel = Relation::GreaterEqual;

  bool is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
  }
  bool constant_holds() const {
    switch (rel) {
      case Relation::GreaterEqual: return constant >= 0;
      case Relation::Greater: return constant > 0;
      case Relation::Equal: return constant == 0;
    }
    return false;
  }
};

Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Integer lcm(const Integer& a, const Integer& b) { return a / gcd(a, b) * b; }

// Positive rescaling so the coefficient vector is a primitive integer vector.
void normalize(Row& row) {
  Integer den = 1;
  for (const auto& c : row.coeffs)
    if (c != 0) den = lcm(den, denominator(c));
  Integer g = 0;
  for (const auto& c : row.coeffs)
    if (c != 0) g = gcd(g, numerator(c) * (den / denominator(c)));
  if (g == 0) return;
  const Rational scale(den, g);
  for (auto& c : row.coeffs) c *= scale;
  row.constant *= scale;
}

class Indexer {
public:
  explicit Indexer(const std::vector<std::string>& coords) : names_(coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) index_.emplace(coords[i], i);
  }

  Row to_row(const Constraint& c) const {
    Row row;
    row.coeffs.assign(names_.size(), Rational(0));
    row.constant = c.expr.constant();
    row.rel = c.rel;
    for (const auto& [name, coeff] : c.expr.terms()) {
      auto it = index_.find(name);
      if (it == index_.end())
        throw Error(ErrorCode::InvalidInput, "constraint mentions undeclared coordinate '" + name + "'");
      row.coeffs[it->second] = coeff;
    }
    return row;
  }

  Constraint to_constraint(const Row& row) const {
    AffineExpr e(row.constant);
    for (std::size_t i = 0; i < row.coeffs.size(); ++i)
      if (row.coeffs[i] != 0) e += AffineExpr::symbol(names_[i], row.coeffs[i]);
    return {e, row.rel};
  }

  std::size_t index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorCode::InvalidInput, "unknown coordinate '" + name + "'");
    return it->second;
  }

  const std::vector<std::string>& names() const { return names_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

// Substitutes x[var] := -(rest of `def`) / def.coeffs[var] into `row`.
void substitute(Row& row, const Row& def, std::size_t var) {
  if (row.coeffs[var] == 0) return;
  const Rational factor = row.coeffs[var] / def.coeffs[var];
  for (std::size_t i = 0; i < row.coeffs.size(); ++i) row.coeffs[i] -= factor * def.coeffs[i];
  row.constant -= factor * def.constant;
  row.coeffs[var] = 0;
}

// Fourier-Motzkin elimination state. `stages[k]` holds the inequalities in
// force before eliminating `order[k]`; equalities are solved first and kept
// in `pivots` for back-substitution.
class Eliminator {
public:
  explicit Eliminator(std::size_t nvars) : nvars_(nvars) {}

  // Returns false if the system is detectably infeasible.
  bool load(std::vector<Row> rows, const std::vector<bool>& eliminable) {
    std::vector<Row> eqs, ineqs;
    for (auto& r : rows) (r.rel == Relation::Equal ? eqs : ineqs).push_back(std::move(r));
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      Row& eq = eqs[i];
      std::optional<std::size_t> var;
      for (std::size_t v = 0; v < nvars_ && !var; ++v)
        if (eq.coeffs[v] != 0 && eliminable[v]) var = v;
      if (!var) {
        if (eq.is_constant()) {
          if (!eq.constant_holds()) return false;
        } else {
          residual_equalities_.push_back(eq);
        }
        continue;
      }
      for (std::size_t j = i + 1; j < eqs.size(); ++j) substitute(eqs[j], eq, *var);
      for (auto& r : ineqs) substitute(r, eq, *var);
      for (auto& r : residual_equalities_) substitute(r, eq, *var);
      for (auto& [v, def] : pivots_) substitute(def, eq, *var);
      pivots_.emplace_back(*var, eq);
    }
    for (auto& r : residual_equalities_) {
      if (r.is_constant() && !r.constant_holds()) return false;
    }
    std::erase_if(residual_equalities_, [](const Row& r) { return r.is_constant(); });
    current_ = std::move(ineqs);
    return prune(current_);
  }

  bool eliminate(std::size_t var) {
    stages_.push_back(current_);
    order_.push_back(var);
    std::vector<Row> pos, neg, next;
    for (auto& r : current_) {
      if (r.coeffs[var] > 0)
        pos.push_back(r);
      else if (r.coeffs[var] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (const Row& p : pos) {
      for (const Row& q : neg) {
        // a x + f >= 0 and -b x + g >= 0 combine to b f + a g >= 0.
        const Rational a = p.coeffs[var];
        const Rational b = -q.coeffs[var];
        Row r;
        r.coeffs.resize(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) r.coeffs[i] = b * p.coeffs[i] + a * q.coeffs[i];
        r.coeffs[var] = 0;
        r.constant = b * p.constant + a * q.constant;
        r.rel = (p.rel == Relation::Greater || q.rel == Relation::Greater) ? Relation::Greater
                                                                          : Relation::GreaterEqual;
        next.push_back(std::move(r));
      }
    }
    current_ = std::move(next);
    return prune(current_);
  }

  // Cheapest next variable among `candidates` that still occurs, if any.
  std::optional<std::size_t> pick(const std::vector<bool>& candidates) const {
    std::optional<std::size_t> best;
    long long best_cost = 0;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (!candidates[v]) continue;
      long long p = 0, n = 0;
      for (const Row& r : current_) {
        if (r.coeffs[v] > 0) ++p;
        if (r.coeffs[v] < 0) ++n;
      }
      if (p + n == 0) continue;
      const long long cost = p * n - p - n;
      if (!best || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    return best;
  }

  const std::vector<Row>& current() const { return current_; }
  const std::vector<Row>& residual_equalities() const { return residual_equalities_; }

  // Assigns every variable, walking the eliminations backwards.
  std::vector<Rational> back_substitute() const {
    std::vector<Rational> x(nvars_, Rational(0));
    std::vector<bool> fixed(nvars_, false);
    for (std::size_t k = order_.size(); k-- > 0;) {
      const std::size_t var = order_[k];
      x[var] = choose(stages_[k], var, x);
      fixed[var] = true;
    }
    for (std::size_t k = pivots_.size(); k-- > 0;) {
      const auto& [var, def] = pivots_[k];
      Rational rest = def.constant;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (i != var) rest += def.coeffs[i] * x[i];
      x[var] = -rest / def.coeffs[var];
    }
    return x;
  }

private:
  static Rational choose(const std::vector<Row>& rows, std::size_t var, const std::vector<Rational>& x) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const Row& r : rows) {
      const Rational a = r.coeffs[var];
      if (a == 0) continue;
      Rational rest = r.constant;
      for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        if (i != var) rest += r.coeffs[i] * x[i];
      const Rational bound = -rest / a;
      const bool strict = r.rel == Relation::Greater;
      if (a > 0) {
        if (!lo || bound > *lo || (bound == *lo && strict)) {
          lo = bound;
          lo_strict = strict;
        }
      } else if (!hi || bound < *hi || (bound == *hi && strict)) {
        hi = bound;
        hi_strict = strict;
      }
    }
    // Prefer small integers; fall back to the midpoint of a narrow interval.
    std::optional<Integer> lo_int, hi_int;
    if (lo) lo_int = lo_strict ? Integer(floor(*lo) + 1) : ceil(*lo);
    if (hi) hi_int = hi_strict ? Integer(ceil(*hi) - 1) : floor(*hi);
    if (!lo_int || !hi_int || *lo_int <= *hi_int) {
      Integer pick = 0;
      if (lo_int && pick < *lo_int) pick = *lo_int;
      if (hi_int && pick > *hi_int) pick = *hi_int;
      return Rational(pick);
    }
    if (*lo == *hi) return *lo;
    return (*lo + *hi) / 2;
  }

  static bool prune(std::vector<Row>& rows) {
    std::vector<Row> kept;
    for (Row& r : rows) {
      if (r.is_constant()) {
        if (!r.constant_holds()) return false;
        continue;
      }
      normalize(r);
      bool merged = false;
      for (Row& k : kept) {
        if (k.coeffs != r.coeffs) continue;
        merged = true;
        if (r.constant < k.constant || (r.constant == k.constant && r.rel == Relation::Greater)) {
          k.constant = r.constant;
          k.rel = r.rel;
        }
        break;
      }
      if (!merged) kept.push_back(std::move(r));
    }
    rows = std::move(kept);
    return true;
  }

  std::size_t nvars_;
  std::vector<std::pair<std::size_t, Row>> pivots_;
  std::vector<Row> residual_equalities_;
  std::vector<Row> current_;
  std::vector<std::vector<Row>> stages_;
  std::vector<std::size_t> order_;
};

Constraint negation(const Constraint& c) {
  switch (c.rel) {
    case Relation::GreaterEqual: return Constraint::gt(-c.expr);
    case Relation::Greater: return Constraint::ge(-c.expr);
    case Relation::Equal: break;
  }
  throw Error(ErrorCode::InvalidInput, "cannot negate an equality into one constraint");
}

bool feasible(const std::vector<std::string>& coords, const System& system) {
  return check_feasible(coords, system).feasible;
}

}  // namespace

FeasibilityResult check_feasible(const std::vector<std::string>& coords, const System& system) {
  const Indexer idx(coords);
  std::vector<Row> rows;
  rows.reserve(system.size());
  for (const Constraint& c : system) rows.push_back(idx.to_row(c));

  Eliminator elim(coords.size());
  const std::vector<bool> all(coords.size(), true);
  FeasibilityResult result;
  if (!elim.load(std::move(rows), all)) return result;
  while (auto var = elim.pick(all))
    if (!elim.eliminate(*var)) return result;

  result.feasible = true;
  const std::vector<Rational> x = elim.back_substitute();
  for (std::size_t i = 0; i < coords.size(); ++i) result.witness[coords[i]] = x[i];
  return result;
}

System project_out(const System& system, const std::vector<std::string>& eliminated) {
  std::vector<std::string> coords;
  for (const Constraint& c : system)
    for (const auto& s : c.expr.symbols())
      if (std::find(coords.begin(), coords.end(), s) == coords.end()) coords.push_back(s);
  for (const auto& s : eliminated)
    if (std::find(coords.begin(), coords.end(), s) == coords.end()) coords.push_back(s);
  std::sort(coords.begin(), coords.end());

  const Indexer idx(coords);
  std::vector<bool> drop(coords.size(), false);
  for (const auto& s : eliminated) drop[idx.index(s)] = true;

  std::vector<Row> rows;
  for (const Constraint& c : system) rows.push_back(idx.to_row(c));
  Eliminator elim(coords.size());
  if (!elim.load(std::move(rows), drop)) return {Constraint::ge(AffineExpr(-1))};
  while (auto var = elim.pick(drop))
    if (!elim.eliminate(*var)) return {Constraint::ge(AffineExpr(-1))};

  System out;
  for (const Row& r : elim.residual_equalities()) out.push_back(idx.to_constraint(r));
  for (const Row& r : elim.current()) out.push_back(idx.to_constraint(r));
  return out;
}

std::vector<std::size_t> implicit_equalities(const std::vector<std::string>& coords, const System& system) {
  std::vector<std::size_t> out;
  if (!feasible(coords, system)) return out;
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system[i].rel != Relation::GreaterEqual) continue;
    System probe = system;
    probe[i].rel = Relation::Greater;
    if (!feasible(coords, probe)) out.push_back(i);
  }
  return out;
}

int affine_dimension(const std::vector<std::string>& coords, const System& system) {
  if (!feasible(coords, system)) return -1;
  const Indexer idx(coords);
  Matrix lin;
  for (const Constraint& c : system)
    if (c.rel == Relation::Equal) lin.push_back(idx.to_row(c).coeffs);
  for (std::size_t i : implicit_equalities(coords, system)) lin.push_back(idx.to_row(system[i]).coeffs);
  return static_cast<int>(coords.size() - rank(std::move(lin)));
}

FeasibilityResult relative_interior_point(const std::vector<std::string>& coords, const System& system) {
  if (!feasible(coords, system)) return {};
  const auto eq = implicit_equalities(coords, system);
  System strict = system;
  for (std::size_t i = 0; i < strict.size(); ++i) {
    if (strict[i].rel != Relation::GreaterEqual) continue;
    strict[i].rel = std::binary_search(eq.begin(), eq.end(), i) ? Relation::Equal : Relation::Greater;
  }
  return check_feasible(coords, strict);
}

System remove_redundant(const std::vector<std::string>& coords, const System& system) {
  System kept = system;
  for (std::size_t i = 0; i < kept.size();) {
    if (kept[i].rel == Relation::Equal) {
      ++i;
      continue;
    }
    System probe;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) probe.push_back(kept[j]);
    probe.push_back(negation(kept[i]));
    if (!feasible(coords, probe))
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return kept;
}

bool implies(const std::vector<std::string>& coords, const System& inner, const System& outer) {
  if (!feasible(coords, inner)) return true;
  for (const Constraint& c : outer) {
    std::vector<Constraint> violations;
    if (c.rel == Relation::Equal) {
      violations = {Constraint::gt(c.expr), Constraint::gt(-c.expr)};
    } else {
      violations = {negation(c)};
    }
    for (const Constraint& v : violations) {
      System probe = inner;
      probe.push_back(v);
      if (feasible(coords, probe)) return false;
    }
  }
  return true;
}

bool equivalent(const std::vector<std::string>& coords, const System& a, const System& b) {
  return implies(coords, a, b) && implies(coords, b, a);
}

}  // namespace troplog
