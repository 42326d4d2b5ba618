#include "troplog/moduli.hpp"

#include "troplog/error.hpp"
#include "troplog/linalg.hpp"
#include "troplog/parallel.hpp"

#include <algorithm>
#include <set>

namespace troplog {

std::vector<std::string> Cone::coordinate_names() const {
  std::vector<std::string> names;
  names.reserve(coords.size());
  for (const auto& c : coords) names.push_back(c.name);
  return names;
}

System Cone::system() const {
  System out;
  out.reserve(facets.size());
  for (const auto& f : facets) out.push_back(Constraint::ge(f));
  return out;
}

Cone make_cone(std::string name, std::vector<Coordinate> coords) {
  Cone cone;
  cone.name = std::move(name);
  cone.coords = std::move(coords);
  for (const auto& c : cone.coords)
    if (c.sign == CoordinateSign::Nonnegative) cone.facets.push_back(AffineExpr::symbol(c.name));
  cone.dimension = affine_dimension(cone.coordinate_names(), cone.system());
  return cone;
}

const ModuliCone* ConeComplex::find(const std::string& type_key) const {
  for (const auto& c : cones)
    if (c.type_key == type_key) return &c;
  return nullptr;
}

std::vector<const ModuliCone*> ConeComplex::maximal_cones() const {
  std::set<std::string> faces;
  for (const auto& fm : face_maps) faces.insert(fm.face);
  std::vector<const ModuliCone*> out;
  for (const auto& c : cones)
    if (!faces.count(c.type_key)) out.push_back(&c);
  return out;
}

int ConeComplex::max_dimension() const {
  int best = -1;
  for (const auto& c : cones) best = std::max(best, c.cone.dimension);
  return best;
}

std::string translation_symbol(std::size_t j, std::size_t m) {
  return m == 1 ? std::string("c") : "c" + std::to_string(j + 1);
}

namespace {

std::vector<Coordinate> length_coordinates(const Tree& tree) {
  std::vector<Coordinate> coords;
  for (std::size_t e = 0; e < tree.edges.size(); ++e)
    coords.push_back({Tree::length_symbol(e), CoordinateSign::Nonnegative});
  return coords;
}

// Face maps for contracting each edge of `type`, matching edges by split.
std::vector<FaceMap> contraction_faces(const CombinatorialType& type) {
  std::vector<FaceMap> out;
  const Tree& big = type.tree;
  std::map<std::vector<LegLabel>, std::size_t> big_edges;
  for (std::size_t e = 0; e < big.edges.size(); ++e) big_edges.emplace(edge_split(big, e), e);

  for (std::size_t e = 0; e < big.edges.size(); ++e) {
    const CombinatorialType small = combinatorial_type(contract_edge(big, e));
    FaceMap fm;
    fm.face = small.key;
    fm.cone = type.key;
    fm.contracted = Tree::length_symbol(e);
    for (std::size_t k = 0; k < small.tree.edges.size(); ++k)
      fm.inclusion.emplace(Tree::length_symbol(k),
                           Tree::length_symbol(big_edges.at(edge_split(small.tree, k))));
    out.push_back(std::move(fm));
  }
  return out;
}

void validate_contacts(int n, const std::vector<ContactOrder>& sigmas) {
  if (sigmas.empty()) throw Error(ErrorCode::InvalidInput, "need at least one contact order");
  for (const auto& sigma : sigmas) {
    if (sigma.size() != static_cast<std::size_t>(std::max(n, 0)))
      throw Error(ErrorCode::LengthMismatch, "contact order has " + std::to_string(sigma.size()) +
                                                 " entries for n = " + std::to_string(n));
    if (!sigma.in_balanced_subgroup())
      throw Error(ErrorCode::NonZeroSum,
                  "contact orders sum to " + std::to_string(sigma.sum()) + ", not zero");
  }
}

}  // namespace

ConeComplex build_moduli_complex(int n, int jobs) {
  if (n < 3)
    throw Error(ErrorCode::UnstableRange, "moduli of stable curves need n >= 3, got " + std::to_string(n));
  const auto types = enumerate_tree_types(n);

  struct Built {
    ModuliCone cone;
    std::vector<FaceMap> faces;
  };
  auto built = parallel_map(types.size(), jobs, [&](std::size_t i) {
    const CombinatorialType& type = types[i];
    Built b;
    b.cone.type_key = type.key;
    b.cone.tree = type.tree;
    b.cone.cone = make_cone(type.key, length_coordinates(type.tree));
    b.faces = contraction_faces(type);
    return b;
  });

  ConeComplex complex;
  complex.n = n;
  for (auto& b : built) {
    complex.cones.push_back(std::move(b.cone));
    for (auto& fm : b.faces) complex.face_maps.push_back(std::move(fm));
  }
  return complex;
}

ConeComplex build_map_moduli(int n, const std::vector<ContactOrder>& sigmas, int jobs) {
  validate_contacts(n, sigmas);
  ConeComplex complex;
  complex.n = n;
  complex.contact_orders = sigmas;
  if (n <= 1) return complex;  // no stable maps
  if (n == 2)
    throw Error(ErrorCode::UnstableRange,
                "two-pointed maps are classified by self-maps of the torus (use selfmap)");

  const std::size_t m = sigmas.size();
  ConeComplex curves = build_moduli_complex(n, jobs);
  complex.face_maps = std::move(curves.face_maps);
  for (auto& fm : complex.face_maps)
    for (std::size_t j = 0; j < m; ++j) fm.inclusion.emplace(translation_symbol(j, m), translation_symbol(j, m));

  complex.cones = parallel_map(curves.cones.size(), jobs, [&](std::size_t i) {
    ModuliCone cone = curves.cones[i];
    std::vector<Coordinate> coords = cone.cone.coords;
    const VertexId base = cone.tree.leg(1).at;
    for (std::size_t j = 0; j < m; ++j) {
      const std::string c = translation_symbol(j, m);
      coords.push_back({c, CoordinateSign::Free});
      cone.functions.push_back(extend_from_leg_slopes(cone.tree, sigmas[j], base, AffineExpr::symbol(c)));
    }
    cone.cone = make_cone(cone.type_key, std::move(coords));
    return cone;
  });
  return complex;
}

ConeComplex build_map_moduli(int n, const ContactOrder& sigma, int jobs) {
  return build_map_moduli(n, std::vector<ContactOrder>{sigma}, jobs);
}

std::vector<std::string> validate_map_point(const TropicalMapPoint& p) {
  std::vector<std::string> issues;
  for (const auto& issue : validate_tree(p.tree).issues) issues.push_back(issue.message);
  if (!p.tree.is_concrete()) issues.push_back("map point needs concrete edge lengths");
  if (p.functions.size() != p.contacts.size())
    issues.push_back("one contact order per target coordinate expected");
  for (std::size_t j = 0; j < p.functions.size(); ++j) {
    const PLFunction& f = p.functions[j];
    const std::string which = "function " + std::to_string(j) + ": ";
    if (!(f.tree == p.tree)) {
      issues.push_back(which + "lives on a different tree");
      continue;
    }
    for (const auto& s : validate_function(f)) issues.push_back(which + s);
    if (!validate_function(f).empty()) continue;
    if (!is_balanced(f)) issues.push_back(which + "not balanced");
    if (j < p.contacts.size() && !(contact_order(f) == p.contacts[j]))
      issues.push_back(which + "leg slopes differ from the contact data");
  }
  return issues;
}

TropicalMapPoint point_on_cone(const ModuliCone& cone, const Assignment& coords) {
  TropicalMapPoint p;
  p.tree = cone.tree;
  for (std::size_t e = 0; e < p.tree.edges.size(); ++e)
    p.tree.edges[e].length = cone.tree.length_expr(e).evaluate(coords);
  for (const PLFunction& f : cone.functions) {
    PLFunction g = f;
    g.tree = p.tree;
    g.base_value = AffineExpr(f.base_value.evaluate(coords));
    p.contacts.push_back(contact_order(g));
    p.functions.push_back(std::move(g));
  }
  return p;
}

AffineExpr splitting_at_leg(const PLFunction& f, LegLabel leg) { return value_at(f, f.tree.leg(leg).at); }

Rational splitting_at_leg(const TropicalMapPoint& p, LegLabel leg) {
  if (p.functions.size() != 1)
    throw Error(ErrorCode::InvalidInput, "splitting needs exactly one target coordinate, got " +
                                             std::to_string(p.functions.size()));
  const AffineExpr v = splitting_at_leg(p.functions.front(), leg);
  if (!v.is_constant()) throw Error(ErrorCode::InvalidInput, "map point is not concrete");
  return v.constant();
}

namespace {

// Edge-aligned slopes for each function while the tree is being rewritten.
struct Working {
  Tree tree;
  std::vector<std::vector<Slope>> slopes;
};

void remove_edge(Working& w, std::size_t e) {
  w.tree.edges.erase(w.tree.edges.begin() + static_cast<std::ptrdiff_t>(e));
  for (auto& s : w.slopes) s.erase(s.begin() + static_cast<std::ptrdiff_t>(e));
}

void remove_vertex(Working& w, VertexId v) { std::erase(w.tree.vertices, v); }

}  // namespace

TropicalMapPoint stabilize(const TropicalMapPoint& p) {
  if (auto issues = validate_map_point(p); !issues.empty())
    throw Error(ErrorCode::InvalidInput, "invalid map point: " + issues.front());

  Working w{p.tree, {}};
  std::vector<VertexId> basepoints;
  std::vector<AffineExpr> base_values;
  for (const auto& f : p.functions) {
    w.slopes.push_back(f.edge_slopes);
    basepoints.push_back(f.basepoint);
    base_values.push_back(f.base_value);
  }
  auto current = [&](std::size_t j) {
    PLFunction f = p.functions[j];
    f.tree = w.tree;
    f.edge_slopes = w.slopes[j];
    f.basepoint = basepoints[j];
    f.base_value = base_values[j];
    return f;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<VertexId> order = w.tree.vertices;
    std::sort(order.begin(), order.end());
    for (VertexId v : order) {
      const auto edges = w.tree.incident_edges(v);
      const auto legs = w.tree.legs_at(v);
      if (edges.size() + legs.size() >= 3 || edges.empty()) continue;

      bool constant = true;
      for (std::size_t j = 0; j < p.functions.size() && constant; ++j) {
        const PLFunction f = current(j);
        for (std::size_t e : edges) constant = constant && f.slope(e, v) == 0;
        for (LegLabel l : legs) constant = constant && f.leg_slope(l) == 0;
      }
      if (!constant) continue;

      // The function is constant near v, so moving a basepoint off v keeps
      // its value.
      const VertexId heir = w.tree.other_end(edges.front(), v);
      for (std::size_t j = 0; j < p.functions.size(); ++j) {
        if (basepoints[j] != v) continue;
        base_values[j] = value_at(current(j), heir);
        basepoints[j] = heir;
      }

      if (edges.size() == 2) {
        const std::size_t e1 = std::min(edges[0], edges[1]);
        const std::size_t e2 = std::max(edges[0], edges[1]);
        const VertexId a = w.tree.other_end(e1, v);
        const VertexId b = w.tree.other_end(e2, v);
        std::vector<Slope> through;
        for (std::size_t j = 0; j < p.functions.size(); ++j) through.push_back(current(j).slope(e1, a));
        Edge merged{{a, b}, *w.tree.edges[e1].length + *w.tree.edges[e2].length};
        w.tree.edges[e1] = merged;
        for (std::size_t j = 0; j < w.slopes.size(); ++j) w.slopes[j][e1] = through[j];
        remove_edge(w, e2);
      } else {
        for (Leg& leg : w.tree.legs)
          if (leg.at == v) leg.at = heir;
        remove_edge(w, edges.front());
      }
      remove_vertex(w, v);
      changed = true;
      break;
    }
  }

  TropicalMapPoint out;
  out.tree = w.tree;
  out.contacts = p.contacts;
  for (std::size_t j = 0; j < p.functions.size(); ++j) out.functions.push_back(current(j));
  return out;
}

namespace {

std::map<std::string, std::string> invert(const std::map<std::string, std::string>& m) {
  std::map<std::string, std::string> out;
  for (const auto& [a, b] : m) out.emplace(b, a);
  return out;
}

// Target coordinates and their expressions in the source chart.
std::vector<std::pair<std::string, AffineExpr>> product_chart(const ModuliCone& cone, LegLabel leg) {
  std::vector<std::pair<std::string, AffineExpr>> out;
  for (const auto& c : cone.cone.coords)
    if (c.sign == CoordinateSign::Nonnegative) out.emplace_back(c.name, AffineExpr::symbol(c.name));
  out.emplace_back(kProductLine, splitting_at_leg(cone.functions.front(), leg));
  return out;
}

ConeCertificate certify_cone(const ModuliCone& source, const ModuliCone& target, LegLabel leg) {
  ConeCertificate cert;
  cert.type_key = source.type_key;
  cert.source_coords = source.cone.coordinate_names();
  const auto chart = product_chart(source, leg);

  bool integral = true;
  Matrix m;
  std::map<std::string, AffineExpr> pullback;
  for (const auto& [name, expr] : chart) {
    cert.target_coords.push_back(name);
    pullback.emplace(name, expr);
    if (expr.constant() != 0) integral = false;
    std::vector<Rational> row;
    std::vector<std::int64_t> int_row;
    for (const auto& src : cert.source_coords) {
      const Rational a = expr.coefficient(src);
      row.push_back(a);
      if (is_integer(a))
        int_row.push_back(to_int64(a));
      else
        integral = false, int_row.push_back(0);
    }
    m.push_back(std::move(row));
    cert.matrix.push_back(std::move(int_row));
  }
  const Rational det = determinant(m);
  cert.determinant = is_integer(det) ? to_int64(det) : 0;
  cert.unimodular = integral && (det == 1 || det == -1);

  // The target cone is the curve cone times a free line; pull it back.
  std::vector<Coordinate> target_coords = target.cone.coords;
  target_coords.push_back({kProductLine, CoordinateSign::Free});
  const Cone product = make_cone(target.type_key, target_coords);
  System pulled;
  for (const auto& f : product.facets) pulled.push_back(Constraint::ge(f.substitute(pullback)));
  cert.maps_onto_target = cert.unimodular && product.coordinate_names() == cert.target_coords &&
                          equivalent(cert.source_coords, source.cone.system(), pulled);
  return cert;
}

bool face_compatible(const ConeComplex& maps, const FaceMap& fm, LegLabel leg) {
  const ModuliCone* big = maps.find(fm.cone);
  const ModuliCone* small = maps.find(fm.face);
  if (!big || !small) return false;
  const auto big_chart = product_chart(*big, leg);
  const auto small_chart = product_chart(*small, leg);
  const auto back = invert(fm.inclusion);
  const std::map<std::string, AffineExpr> on_face{{fm.contracted, AffineExpr(0)}};

  std::map<std::string, AffineExpr> restricted;
  for (const auto& [name, expr] : big_chart) {
    const std::string small_name = name == kProductLine ? name : (back.count(name) ? back.at(name) : "");
    if (name == fm.contracted) continue;
    if (small_name.empty()) return false;
    restricted.emplace(small_name, expr.substitute(on_face).rename(back));
  }
  if (restricted.size() != small_chart.size()) return false;
  for (const auto& [name, expr] : small_chart) {
    auto it = restricted.find(name);
    if (it == restricted.end() || it->second != expr) return false;
  }
  return true;
}

}  // namespace

std::optional<SplittingWitness> find_splitting_witness(const ConeComplex& maps, LegLabel i, LegLabel j) {
  if (maps.contact_orders.size() != 1)
    throw Error(ErrorCode::InvalidInput, "splitting witnesses need a single target coordinate");
  for (const ModuliCone& cone : maps.cones) {
    const PLFunction& f = cone.functions.front();
    const AffineExpr diff = splitting_at_leg(f, i) - splitting_at_leg(f, j);
    if (diff.is_constant()) continue;

    Assignment point;
    for (const auto& c : cone.cone.coords)
      point[c.name] = c.sign == CoordinateSign::Nonnegative ? Rational(1) : Rational(0);
    if (diff.evaluate(point) == 0) point[diff.terms().begin()->first] += 1;

    // Re-derive the values on the concrete curve rather than trusting the
    // symbolic difference.
    const TropicalMapPoint p = point_on_cone(cone, point);
    const Rational vi = splitting_at_leg(p, i);
    const Rational vj = splitting_at_leg(p, j);
    if (vi != vj) return SplittingWitness{i, j, cone.type_key, point, vi, vj};
  }
  return std::nullopt;
}

IsomorphismReport product_decomposition(int n, const ContactOrder& sigma, LegLabel leg, int jobs) {
  if (n < 3)
    throw Error(ErrorCode::UnstableRange, "product decomposition needs n >= 3, got " + std::to_string(n));
  validate_contacts(n, {sigma});
  if (leg < 1 || leg > n) throw Error(ErrorCode::NoSuchLeg, "no leg labelled " + std::to_string(leg));

  IsomorphismReport report;
  report.n = n;
  report.sigma = sigma;
  report.leg = leg;

  const ConeComplex maps = build_map_moduli(n, sigma, jobs);
  const ConeComplex curves = build_moduli_complex(n, jobs);

  report.types_match = maps.cones.size() == curves.cones.size();
  for (std::size_t k = 0; report.types_match && k < maps.cones.size(); ++k)
    report.types_match = maps.cones[k].type_key == curves.cones[k].type_key &&
                         maps.cones[k].tree == curves.cones[k].tree;

  if (report.types_match)
    report.cones = parallel_map(maps.cones.size(), jobs, [&](std::size_t k) {
      return certify_cone(maps.cones[k], curves.cones[k], leg);
    });

  report.faces_compatible = maps.face_maps.size() == curves.face_maps.size();
  for (std::size_t k = 0; k < maps.face_maps.size(); ++k) {
    const FaceMap& fm = maps.face_maps[k];
    ++report.face_maps_checked;
    bool ok = face_compatible(maps, fm, leg);
    if (k < curves.face_maps.size()) {
      const FaceMap& cm = curves.face_maps[k];
      auto expected = cm.inclusion;
      expected.emplace("c", "c");
      ok = ok && cm.face == fm.face && cm.cone == fm.cone && cm.contracted == fm.contracted &&
           expected == fm.inclusion;
    }
    report.faces_compatible = report.faces_compatible && ok;
  }

  for (LegLabel j = 1; j <= n; ++j) {
    if (j == leg) continue;
    if (auto w = find_splitting_witness(maps, leg, j))
      report.witnesses.push_back(std::move(*w));
    else
      report.legs_without_witness.push_back(j);
  }
  if (n == 3)
    report.notes.push_back("no tropical witness: every leg sits on the single vertex of the star type");
  else if (!report.legs_without_witness.empty())
    report.notes.push_back("contact order is not generic: some pairs of splittings agree on every cone");

  report.certified = report.types_match && report.faces_compatible &&
                     std::all_of(report.cones.begin(), report.cones.end(),
                                 [](const ConeCertificate& c) { return c.unimodular && c.maps_onto_target; });
  return report;
}

}  // namespace troplog
