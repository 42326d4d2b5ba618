#include "troplog/fan.hpp"

#include "troplog/error.hpp"

#include <cmath>

namespace troplog {

std::vector<std::string> Fan::coordinate_names() const {
  std::vector<std::string> names;
  for (int j = 1; j <= dim; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

namespace {

Assignment as_point(const std::vector<std::string>& names, const std::vector<Rational>& x) {
  Assignment p;
  for (std::size_t j = 0; j < names.size(); ++j) p[names[j]] = x[j];
  return p;
}

FanCone make_fan_cone(int dim, const std::vector<IntVector>& generators) {
  FanCone cone;
  cone.generators = generators;
  std::vector<std::string> coords;
  for (int j = 1; j <= dim; ++j) coords.push_back("x" + std::to_string(j));

  // x = sum lambda_k g_k with lambda >= 0, then project the lambdas away.
  System lifted;
  std::vector<std::string> lambdas;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (generators[k].size() != static_cast<std::size_t>(dim))
      throw Error(ErrorCode::InvalidInput, "generator " + std::to_string(k) + " has " +
                                               std::to_string(generators[k].size()) +
                                               " entries in a fan of dimension " + std::to_string(dim));
    lambdas.push_back("lambda" + std::to_string(k));
    lifted.push_back(Constraint::ge(AffineExpr::symbol(lambdas.back())));
  }
  for (int j = 0; j < dim; ++j) {
    AffineExpr row = AffineExpr::symbol(coords[static_cast<std::size_t>(j)]);
    for (std::size_t k = 0; k < generators.size(); ++k)
      row -= AffineExpr::symbol(lambdas[k], Rational(generators[k][static_cast<std::size_t>(j)]));
    lifted.push_back(Constraint::eq(row));
  }
  System projected = project_out(lifted, lambdas);
  std::erase_if(projected, [](const Constraint& c) { return c.expr.is_constant(); });
  cone.halfspaces = remove_redundant(coords, projected);
  cone.dimension = affine_dimension(coords, cone.halfspaces);
  return cone;
}

// The smallest face of `cone` containing `region`: inequalities vanishing
// on all of `region` become equalities.
System smallest_face(const std::vector<std::string>& coords, const System& cone, const System& region) {
  System face = cone;
  for (Constraint& h : face) {
    if (h.rel == Relation::Equal) continue;
    System probe = region;
    probe.push_back(Constraint::gt(h.expr));
    if (!check_feasible(coords, probe).feasible) h.rel = Relation::Equal;
  }
  return face;
}

IntVector add(const IntVector& a, const IntVector& b) { return {a[0] + b[0], a[1] + b[1]}; }
IntVector neg(const IntVector& a) { return {-a[0], -a[1]}; }
std::int64_t cross(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }
std::int64_t dot(const IntVector& a, const IntVector& b) { return a[0] * b[0] + a[1] * b[1]; }

// Directions strictly inside each open arc between angularly consecutive
// rays; membership in a fan cone is constant along such an arc.
std::vector<IntVector> arc_probes(std::vector<IntVector> rays) {
  std::erase_if(rays, [](const IntVector& r) { return r[0] == 0 && r[1] == 0; });
  if (rays.empty()) return {{1, 0}};
  std::sort(rays.begin(), rays.end(), [](const IntVector& a, const IntVector& b) {
    return std::atan2(static_cast<double>(a[1]), static_cast<double>(a[0])) <
           std::atan2(static_cast<double>(b[1]), static_cast<double>(b[0]));
  });
  std::vector<IntVector> probes;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const IntVector& u = rays[i];
    const IntVector& v = rays[(i + 1) % rays.size()];
    const std::int64_t c = cross(u, v);
    if (c > 0)
      probes.push_back(add(u, v));
    else if (c < 0)
      probes.push_back(neg(add(u, v)));
    else if (dot(u, v) < 0)
      probes.push_back({-u[1], u[0]});
    else {
      // Same direction: the arc is everything except this ray.
      probes.push_back(neg(u));
      probes.push_back({-u[1], u[0]});
      probes.push_back({u[1], -u[0]});
    }
  }
  return probes;
}

}  // namespace

bool Fan::cone_contains(std::size_t cone, const std::vector<Rational>& x) const {
  const Assignment p = as_point(coordinate_names(), x);
  for (const Constraint& h : cones.at(cone).halfspaces)
    if (!h.holds_at(p)) return false;
  return true;
}

Fan make_fan(int dim, const std::vector<std::vector<IntVector>>& cone_generators, bool complete) {
  if (dim < 0) throw Error(ErrorCode::InvalidInput, "negative fan dimension");
  Fan fan;
  fan.dim = dim;
  fan.complete = complete;
  for (const auto& gens : cone_generators) fan.cones.push_back(make_fan_cone(dim, gens));
  return fan;
}

Fan p1_fan() { return make_fan(1, {{{-1}}, {}, {{1}}}); }

Fan p1_power_fan(int m) {
  std::vector<std::vector<IntVector>> cones{{}};
  for (int j = 0; j < m; ++j) {
    std::vector<std::vector<IntVector>> next;
    for (const auto& gens : cones) {
      for (int choice : {-1, 0, 1}) {
        auto extended = gens;
        if (choice != 0) {
          IntVector g(static_cast<std::size_t>(m), 0);
          g[static_cast<std::size_t>(j)] = choice;
          extended.push_back(g);
        }
        next.push_back(std::move(extended));
      }
    }
    cones = std::move(next);
  }
  return make_fan(m, cones);
}

Fan trivial_fan(int m) {
  std::vector<IntVector> gens;
  for (int j = 0; j < m; ++j) {
    IntVector e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(j)] = 1;
    gens.push_back(e);
    e[static_cast<std::size_t>(j)] = -1;
    gens.push_back(e);
  }
  return make_fan(m, {gens});
}

FanReport validate_fan(const Fan& fan) {
  FanReport report;
  const auto coords = fan.coordinate_names();

  for (std::size_t a = 0; a < fan.cones.size(); ++a) {
    for (std::size_t b = a + 1; b < fan.cones.size(); ++b) {
      System meet = fan.cones[a].halfspaces;
      meet.insert(meet.end(), fan.cones[b].halfspaces.begin(), fan.cones[b].halfspaces.end());
      for (auto [self, other] : {std::pair{a, b}, std::pair{b, a}}) {
        const System face = smallest_face(coords, fan.cones[self].halfspaces, meet);
        if (!implies(coords, face, fan.cones[other].halfspaces)) {
          report.non_face_intersections.push_back("cones " + std::to_string(a) + " and " +
                                                  std::to_string(b) + " meet outside a common face of cone " +
                                                  std::to_string(self));
          break;
        }
      }
    }
  }

  if (fan.dim > 2) {
    if (fan.complete)
      throw Error(ErrorCode::UnsupportedDimension,
                  "completeness can only be checked for dimension <= 2, got " + std::to_string(fan.dim));
    return report;
  }

  std::vector<IntVector> probes;
  if (fan.dim == 1) {
    probes = {{1}, {-1}};
  } else if (fan.dim == 2) {
    std::vector<IntVector> rays;
    for (const auto& c : fan.cones) rays.insert(rays.end(), c.generators.begin(), c.generators.end());
    probes = arc_probes(rays);
  }
  report.complete = true;
  for (const IntVector& p : probes) {
    std::vector<Rational> x(p.begin(), p.end());
    bool covered = false;
    for (std::size_t k = 0; k < fan.cones.size() && !covered; ++k) covered = fan.cone_contains(k, x);
    if (!covered) {
      report.complete = false;
      if (fan.complete) {
        std::string dir;
        for (std::size_t j = 0; j < p.size(); ++j) dir += (j ? "," : "") + std::to_string(p[j]);
        report.coverage_gaps.push_back("direction (" + dir + ") is not covered");
      }
    }
  }
  return report;
}

}  // namespace troplog
