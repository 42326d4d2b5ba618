#include "troplog/subdivision.hpp"

#include "troplog/error.hpp"
#include "troplog/parallel.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace troplog {

bool SubdividedCell::contains(const Assignment& point) const {
  return std::all_of(halfspaces.begin(), halfspaces.end(),
                     [&](const Constraint& c) { return c.holds_at(point); });
}

bool SubdividedCell::contains_in_interior(const Assignment& point) const {
  for (const Constraint& c : halfspaces) {
    const Rational v = c.expr.evaluate(point);
    if (c.rel == Relation::Equal ? v != 0 : v <= 0) return false;
  }
  return true;
}

VertexFunctionals vertex_functionals(const ModuliCone& cone) {
  VertexFunctionals out;
  for (std::size_t j = 0; j < cone.functions.size(); ++j)
    for (const auto& [v, value] : vertex_values(cone.functions[j])) out.emplace(std::pair{v, j}, value);
  return out;
}

namespace {

void require_complete(const Fan& fan) {
  if (!fan.complete) throw Error(ErrorCode::IncompleteFan, "target fan is not complete");
  if (fan.dim <= 2 && !validate_fan(fan).complete)
    throw Error(ErrorCode::IncompleteFan, "target fan does not cover R^" + std::to_string(fan.dim));
}

struct Pullback {
  std::vector<VertexId> vertices;
  // pulled[v][k]: fan cone k's halfspaces evaluated at vertex v's image.
  std::map<VertexId, std::vector<System>> pulled;
};

Pullback pull_back(const VertexFunctionals& functionals, const Fan& fan) {
  Pullback pb;
  std::set<VertexId> vertices;
  for (const auto& [key, _] : functionals) vertices.insert(key.first);
  pb.vertices.assign(vertices.begin(), vertices.end());

  const auto names = fan.coordinate_names();
  for (VertexId v : pb.vertices) {
    std::map<std::string, AffineExpr> image;
    for (std::size_t j = 0; j < names.size(); ++j) {
      auto it = functionals.find({v, j});
      if (it == functionals.end())
        throw Error(ErrorCode::InvalidInput, "vertex " + std::to_string(v) + " has no functional for coordinate " +
                                                 std::to_string(j));
      image.emplace(names[j], it->second);
    }
    for (const FanCone& cone : fan.cones) {
      System sys;
      for (const Constraint& h : cone.halfspaces) {
        Constraint c{h.expr.substitute(image), h.rel};
        if (!c.expr.is_constant()) {
          sys.push_back(std::move(c));
        } else if (!c.holds_at({})) {
          sys = {Constraint::ge(AffineExpr(-1))};
          break;
        }
      }
      pb.pulled[v].push_back(std::move(sys));
    }
  }
  return pb;
}

System join(const System& a, const System& b) {
  System out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::vector<SubdividedCell> subdivide_cone(const Cone& parent, const VertexFunctionals& functionals,
                                           const Fan& fan) {
  require_complete(fan);
  const auto coords = parent.coordinate_names();
  const System base = parent.system();
  const int dim = affine_dimension(coords, base);
  const Pullback pb = pull_back(functionals, fan);

  // Per vertex: fan cones whose preimage is full-dimensional, one per
  // distinct preimage, preferring the smallest fan cone.
  std::map<VertexId, std::vector<std::size_t>> candidates;
  for (VertexId v : pb.vertices) {
    std::vector<std::size_t> order(fan.cones.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return fan.cones[a].dimension < fan.cones[b].dimension;
    });
    std::vector<std::size_t> kept;
    for (std::size_t k : order) {
      const System sys = join(base, pb.pulled.at(v)[k]);
      if (affine_dimension(coords, sys) != dim) continue;
      const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](std::size_t other) {
        return equivalent(coords, sys, join(base, pb.pulled.at(v)[other]));
      });
      if (!duplicate) kept.push_back(k);
    }
    std::sort(kept.begin(), kept.end());
    candidates[v] = std::move(kept);
  }

  std::vector<SubdividedCell> cells;
  std::map<VertexId, std::size_t> assignment;
  std::function<void(std::size_t, const System&)> extend = [&](std::size_t depth, const System& sys) {
    if (depth == pb.vertices.size()) {
      SubdividedCell cell;
      cell.parent = parent.name;
      cell.assignment = assignment;
      cell.halfspaces = remove_redundant(coords, sys);
      cell.witness = relative_interior_point(coords, cell.halfspaces).witness;
      cell.dimension = dim;
      cells.push_back(std::move(cell));
      return;
    }
    const VertexId v = pb.vertices[depth];
    for (std::size_t k : candidates.at(v)) {
      const System next = join(sys, pb.pulled.at(v)[k]);
      if (affine_dimension(coords, next) != dim) continue;
      assignment[v] = k;
      extend(depth + 1, next);
      assignment.erase(v);
    }
  };
  if (dim >= 0) extend(0, base);
  return cells;
}

std::vector<std::size_t> cell_f_vector(const Cone& parent, const VertexFunctionals& functionals, const Fan& fan) {
  require_complete(fan);
  const auto coords = parent.coordinate_names();
  const System base = parent.system();
  const int dim = affine_dimension(coords, base);
  const Pullback pb = pull_back(functionals, fan);

  std::vector<System> found;
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(dim, 0) + 1), 0);
  std::function<void(std::size_t, const System&)> extend = [&](std::size_t depth, const System& sys) {
    if (!check_feasible(coords, sys).feasible) return;
    if (depth == pb.vertices.size()) {
      for (const System& other : found)
        if (equivalent(coords, sys, other)) return;
      found.push_back(sys);
      ++counts[static_cast<std::size_t>(affine_dimension(coords, sys))];
      return;
    }
    const VertexId v = pb.vertices[depth];
    for (const System& pulled : pb.pulled.at(v)) extend(depth + 1, join(sys, pulled));
  };
  if (dim >= 0) extend(0, base);
  return counts;
}

bool cells_agree_on_face(const ModuliCone& big, const std::vector<SubdividedCell>& big_cells,
                         const ModuliCone& small, const std::vector<SubdividedCell>& small_cells,
                         const FaceMap& face) {
  const auto big_coords = big.cone.coordinate_names();
  const auto small_coords = small.cone.coordinate_names();
  std::map<std::string, std::string> back;
  for (const auto& [s, b] : face.inclusion) back.emplace(b, s);
  const std::map<std::string, AffineExpr> on_face{{face.contracted, AffineExpr(0)}};

  std::vector<System> restricted;
  for (const SubdividedCell& cell : big_cells) {
    System sys = cell.halfspaces;
    sys.push_back(Constraint::eq(AffineExpr::symbol(face.contracted)));
    if (affine_dimension(big_coords, sys) != small.cone.dimension) continue;
    System renamed;
    for (const Constraint& c : cell.halfspaces) {
      Constraint r{c.expr.substitute(on_face).rename(back), c.rel};
      if (!r.expr.is_constant()) renamed.push_back(std::move(r));
    }
    const bool duplicate = std::any_of(restricted.begin(), restricted.end(),
                                       [&](const System& s) { return equivalent(small_coords, s, renamed); });
    if (!duplicate) restricted.push_back(std::move(renamed));
  }
  if (restricted.size() != small_cells.size()) return false;
  std::vector<bool> used(small_cells.size(), false);
  for (const System& r : restricted) {
    bool matched = false;
    for (std::size_t k = 0; k < small_cells.size() && !matched; ++k) {
      if (used[k]) continue;
      System with_cone = join(small.cone.system(), r);
      if (equivalent(small_coords, with_cone, join(small.cone.system(), small_cells[k].halfspaces))) {
        used[k] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

SubdivisionResult subdivide_map_moduli(int n, const std::vector<ContactOrder>& sigmas, const Fan& fan, int jobs) {
  if (n < 3) throw Error(ErrorCode::UnstableRange, "subdivision needs n >= 3, got " + std::to_string(n));
  if (sigmas.size() != static_cast<std::size_t>(fan.dim))
    throw Error(ErrorCode::LengthMismatch, "need one contact order per fan coordinate: " +
                                               std::to_string(sigmas.size()) + " for dimension " +
                                               std::to_string(fan.dim));
  require_complete(fan);

  SubdivisionResult result;
  result.complex = build_map_moduli(n, sigmas, jobs);
  const auto& cones = result.complex.cones;

  struct PerCone {
    std::vector<SubdividedCell> cells;
    std::vector<std::size_t> f_vector;
  };
  auto per_cone = parallel_map(cones.size(), jobs, [&](std::size_t i) {
    const VertexFunctionals functionals = vertex_functionals(cones[i]);
    return PerCone{subdivide_cone(cones[i].cone, functionals, fan),
                   cell_f_vector(cones[i].cone, functionals, fan)};
  });

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    index.emplace(cones[i].type_key, i);
    auto& stats = result.statistics;
    stats.cells_per_cone[cones[i].type_key] = per_cone[i].cells.size();
    stats.f_vectors[cones[i].type_key] = per_cone[i].f_vector;
    stats.total_cells += per_cone[i].cells.size();
  }

  const auto& face_maps = result.complex.face_maps;
  auto agreements = parallel_map(face_maps.size(), jobs, [&](std::size_t k) {
    const FaceMap& fm = face_maps[k];
    const std::size_t big = index.at(fm.cone);
    const std::size_t small = index.at(fm.face);
    return cells_agree_on_face(cones[big], per_cone[big].cells, cones[small], per_cone[small].cells, fm);
  });
  result.statistics.face_maps_checked = face_maps.size();
  result.statistics.glued_consistently =
      std::all_of(agreements.begin(), agreements.end(), [](bool ok) { return ok; });

  for (auto& pc : per_cone)
    for (auto& cell : pc.cells) result.cells.push_back(std::move(cell));
  return result;
}

std::vector<Assignment> sample_cone_points(const Cone& cone, std::size_t count, std::mt19937_64& rng) {
  std::vector<Assignment> points;
  const std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  // Grid: nonnegative coordinates on `grid`, free ones on +/- grid.
  std::vector<std::vector<Rational>> axes;
  for (const auto& c : cone.coords) {
    std::vector<Rational> axis = grid;
    if (c.sign == CoordinateSign::Free)
      for (std::size_t k = 1; k < grid.size(); ++k) axis.push_back(-grid[k]);
    axes.push_back(std::move(axis));
  }
  std::vector<std::size_t> pos(axes.size(), 0);
  const std::size_t grid_budget = count / 2;
  while (points.size() < grid_budget) {
    Assignment p;
    for (std::size_t i = 0; i < axes.size(); ++i) p[cone.coords[i].name] = axes[i][pos[i]];
    points.push_back(std::move(p));
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == axes[i].size()) pos[i++] = 0;
    if (i == pos.size()) break;
  }
  std::uniform_int_distribution<int> num(0, 400);
  std::uniform_int_distribution<int> den(1, 37);
  while (points.size() < count) {
    Assignment p;
    for (const auto& c : cone.coords) {
      Rational v(num(rng), den(rng));
      if (c.sign == CoordinateSign::Free) v -= Rational(200, den(rng));
      p[c.name] = v;
    }
    points.push_back(std::move(p));
  }
  return points;
}

CoverCheck check_cover(const std::vector<SubdividedCell>& cells, const std::vector<Assignment>& points) {
  CoverCheck check;
  for (const Assignment& p : points) {
    ++check.points;
    std::size_t containing = 0;
    bool interior = false;
    for (const SubdividedCell& cell : cells) {
      if (cell.contains(p)) ++containing;
      if (cell.contains_in_interior(p)) interior = true;
    }
    if (containing == 0) ++check.uncovered;
    if (interior && containing > 1) ++check.interior_overlaps;
  }
  return check;
}

}  // namespace troplog
