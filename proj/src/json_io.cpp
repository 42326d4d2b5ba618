#include "troplog/json_io.hpp"

#include "troplog/error.hpp"

#include <algorithm>

namespace troplog::json_io {

namespace {

// A JSON value together with its path, for error messages like
// "edges[2].ends: expected an array".
class Field {
public:
  Field(const Json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const Json& raw() const { return value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, (path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

  Field operator[](const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    auto it = value_.find(key);
    if (it == value_.end()) fail(std::string("missing field \"") + key + "\"");
    return {*it, path_.empty() ? std::string(key) : path_ + "." + key};
  }

  std::vector<Field> items() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Field> out;
    for (std::size_t i = 0; i < value_.size(); ++i) out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  std::vector<std::pair<std::string, Field>> members() const {
    if (!value_.is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Field>> out;
    for (auto it = value_.begin(); it != value_.end(); ++it)
      out.emplace_back(it.key(), Field(it.value(), path_ + "." + it.key()));
    return out;
  }

  std::int64_t as_int() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<std::int64_t>();
  }

  bool as_bool() const {
    if (!value_.is_boolean()) fail("expected a boolean");
    return value_.get<bool>();
  }

  std::string as_string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  Rational as_rational() const {
    if (value_.is_number_integer()) return Rational(value_.get<std::int64_t>());
    if (!value_.is_string()) fail("expected a rational string \"p/q\"");
    try {
      return parse_rational(value_.get<std::string>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  AffineExpr as_affine() const {
    if (value_.is_number_integer()) return AffineExpr(value_.get<std::int64_t>());
    try {
      return AffineExpr::parse(as_string());
    } catch (const Error& e) {
      fail(e.what());
    }
  }

private:
  const Json& value_;
  std::string path_;
};

int as_vertex(const Field& f) { return static_cast<int>(f.as_int()); }

Json rational(const Rational& r) { return format_rational(r); }

Json assignment_json(const Assignment& a) {
  Json j = Json::object();
  for (const auto& [k, v] : a) j[k] = format_rational(v);
  return j;
}

Assignment read_assignment(const Field& f) {
  Assignment a;
  for (const auto& [k, v] : f.members()) a[k] = v.as_rational();
  return a;
}

Json constraint_json(const Constraint& c) {
  return Json{{"expr", c.expr.to_string()}, {"rel", std::string(to_string(c.rel))}};
}

Constraint read_constraint(const Field& f) {
  Constraint c;
  c.expr = f["expr"].as_affine();
  const std::string rel = f["rel"].as_string();
  if (rel == ">=")
    c.rel = Relation::GreaterEqual;
  else if (rel == ">")
    c.rel = Relation::Greater;
  else if (rel == "=")
    c.rel = Relation::Equal;
  else
    f["rel"].fail("unknown relation \"" + rel + "\"");
  return c;
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

std::vector<std::string> read_strings(const Field& f) {
  std::vector<std::string> out;
  for (const auto& item : f.items()) out.push_back(item.as_string());
  return out;
}

void write_tree_fields(Json& j, const Tree& tree) {
  j["vertices"] = tree.vertices;
  Json edges = Json::array();
  for (const Edge& e : tree.edges)
    edges.push_back(Json{{"ends", {e.ends[0], e.ends[1]}},
                         {"length", e.length ? rational(*e.length) : Json(nullptr)}});
  j["edges"] = std::move(edges);
  Json legs = Json::array();
  for (const Leg& l : tree.legs) legs.push_back(Json{{"label", l.label}, {"at", l.at}});
  j["legs"] = std::move(legs);
}

Tree read_tree(const Field& f) {
  Tree t;
  for (const auto& v : f["vertices"].items()) t.vertices.push_back(as_vertex(v));
  for (const auto& e : f["edges"].items()) {
    const auto ends = e["ends"].items();
    if (ends.size() != 2) e["ends"].fail("expected two endpoints");
    Edge edge{{as_vertex(ends[0]), as_vertex(ends[1])}, std::nullopt};
    if (e.has("length") && !e["length"].raw().is_null()) edge.length = e["length"].as_rational();
    t.edges.push_back(edge);
  }
  for (const auto& l : f["legs"].items()) t.legs.push_back({static_cast<int>(l["label"].as_int()), as_vertex(l["at"])});
  return t;
}

PLFunction read_pl_function(const Field& f) {
  PLFunction pl;
  pl.tree = read_tree(f);
  pl.basepoint = as_vertex(f["basepoint"]);
  pl.base_value = f["base_value"].as_affine();

  std::vector<std::optional<Slope>> slopes(pl.tree.edges.size());
  for (const auto& s : f["edge_slopes"].items()) {
    const VertexId from = as_vertex(s["from"]);
    const VertexId to = as_vertex(s["to"]);
    const Slope k = s["slope"].as_int();
    bool found = false;
    for (std::size_t e = 0; e < pl.tree.edges.size(); ++e) {
      const auto& ends = pl.tree.edges[e].ends;
      Slope oriented;
      if (ends[0] == from && ends[1] == to)
        oriented = k;
      else if (ends[0] == to && ends[1] == from)
        oriented = -k;
      else
        continue;
      found = true;
      if (slopes[e] && *slopes[e] != oriented) s.fail("slope contradicts an earlier entry for the same edge");
      slopes[e] = oriented;
      break;
    }
    if (!found) s.fail("no edge between " + std::to_string(from) + " and " + std::to_string(to));
  }
  for (std::size_t e = 0; e < slopes.size(); ++e) {
    if (!slopes[e]) f["edge_slopes"].fail("edge " + std::to_string(e) + " has no slope");
    pl.edge_slopes.push_back(*slopes[e]);
  }

  pl.leg_slopes.assign(pl.tree.legs.size(), 0);
  std::vector<bool> seen(pl.tree.legs.size(), false);
  for (const auto& [key, value] : f["leg_slopes"].members()) {
    int label = 0;
    try {
      std::size_t used = 0;
      label = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      value.fail("leg label must be an integer");
    }
    if (label < 1 || static_cast<std::size_t>(label) > pl.leg_slopes.size()) value.fail("no such leg");
    pl.leg_slopes[static_cast<std::size_t>(label - 1)] = value.as_int();
    seen[static_cast<std::size_t>(label - 1)] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) f["leg_slopes"].fail("leg " + std::to_string(i + 1) + " has no slope");
  return pl;
}

ContactOrder read_contact_order(const Field& f) {
  ContactOrder c;
  for (const auto& s : f.items()) c.slopes.push_back(s.as_int());
  return c;
}

Json cone_json(const ModuliCone& c) {
  Json j;
  j["type_key"] = c.type_key;
  j["tree"] = to_json(c.tree);
  Json coords = Json::array();
  for (const auto& x : c.cone.coords)
    coords.push_back(Json{{"name", x.name}, {"sign", x.sign == CoordinateSign::Free ? "free" : "nonneg"}});
  j["coords"] = std::move(coords);
  Json facets = Json::array();
  for (const auto& f : c.cone.facets) facets.push_back(f.to_string());
  j["facets"] = std::move(facets);
  j["dimension"] = c.cone.dimension;
  if (!c.functions.empty()) {
    Json fs = Json::array();
    for (const auto& f : c.functions) {
      Json fj = to_json(f);
      for (const char* key : {"vertices", "edges", "legs"}) fj.erase(key);
      fs.push_back(std::move(fj));
    }
    j["functions"] = std::move(fs);
  }
  return j;
}

ModuliCone read_cone(const Field& f) {
  ModuliCone c;
  c.type_key = f["type_key"].as_string();
  c.tree = read_tree(f["tree"]);
  c.cone.name = c.type_key;
  for (const auto& x : f["coords"].items()) {
    const std::string sign = x["sign"].as_string();
    if (sign != "free" && sign != "nonneg") x["sign"].fail("expected \"free\" or \"nonneg\"");
    c.cone.coords.push_back({x["name"].as_string(), sign == "free" ? CoordinateSign::Free : CoordinateSign::Nonnegative});
  }
  for (const auto& x : f["facets"].items()) c.cone.facets.push_back(x.as_affine());
  c.cone.dimension = static_cast<int>(f["dimension"].as_int());
  if (f.has("functions")) {
    for (const auto& fn : f["functions"].items()) {
      // Functions share the cone's tree, which is stored once.
      Json merged = fn.raw();
      merged.update(to_json(c.tree));
      c.functions.push_back(pl_function_from_json(merged));
    }
  }
  return c;
}

}  // namespace

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError,
                "JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(column));
  }
}

Json to_json(const Tree& tree) {
  Json j = Json::object();
  write_tree_fields(j, tree);
  return j;
}

Tree tree_from_json(const Json& j) { return read_tree(Field(j, "")); }

Json to_json(const ValidationReport& report) {
  Json issues = Json::array();
  for (const auto& i : report.issues)
    issues.push_back(Json{{"kind", std::string(to_string(i.kind))}, {"message", i.message}});
  return Json{{"valid", report.ok()}, {"issues", std::move(issues)}};
}

ValidationReport validation_report_from_json(const Json& j) {
  using K = ValidationIssue::Kind;
  ValidationReport report;
  for (const auto& item : Field(j, "")["issues"].items()) {
    const std::string kind = item["kind"].as_string();
    std::optional<K> parsed;
    for (K k : {K::EmptyTree, K::DuplicateVertex, K::UnknownVertex, K::SelfLoop, K::Cycle, K::Disconnected,
                K::DuplicateLegLabel, K::LegLabelRange, K::NegativeLength, K::ZeroLength})
      if (to_string(k) == kind) parsed = k;
    if (!parsed) item["kind"].fail("unknown issue kind \"" + kind + "\"");
    report.issues.push_back({*parsed, item["message"].as_string()});
  }
  return report;
}

Json to_json(const ContactOrder& sigma) { return Json(sigma.slopes); }

ContactOrder contact_order_from_json(const Json& j) { return read_contact_order(Field(j, "")); }

Json to_json(const PLFunction& f) {
  Json j = Json::object();
  write_tree_fields(j, f.tree);
  j["basepoint"] = f.basepoint;
  j["base_value"] = f.base_value.to_string();
  Json slopes = Json::array();
  for (std::size_t e = 0; e < f.tree.edges.size(); ++e)
    slopes.push_back(Json{{"from", f.tree.edges[e].ends[0]},
                          {"to", f.tree.edges[e].ends[1]},
                          {"slope", e < f.edge_slopes.size() ? f.edge_slopes[e] : 0}});
  j["edge_slopes"] = std::move(slopes);
  Json legs = Json::object();
  for (std::size_t i = 0; i < f.leg_slopes.size(); ++i) legs[std::to_string(i + 1)] = f.leg_slopes[i];
  j["leg_slopes"] = std::move(legs);
  return j;
}

PLFunction pl_function_from_json(const Json& j) { return read_pl_function(Field(j, "")); }

Json to_json(const Multidegree& md) {
  Json degrees = Json::array();
  for (const auto& [v, d] : md.degrees) degrees.push_back(Json{{"vertex", v}, {"degree", d}});
  return Json{{"degrees", std::move(degrees)}, {"total", md.total()}, {"balanced", md.is_zero()}};
}

Multidegree multidegree_from_json(const Json& j) {
  Multidegree md;
  for (const auto& item : Field(j, "")["degrees"].items()) md.degrees[as_vertex(item["vertex"])] = item["degree"].as_int();
  return md;
}

Json to_json(const ConeComplex& complex) {
  Json j;
  j["n"] = complex.n;
  Json sigmas = Json::array();
  for (const auto& s : complex.contact_orders) sigmas.push_back(to_json(s));
  j["contact_orders"] = std::move(sigmas);
  Json cones = Json::array();
  for (const auto& c : complex.cones) cones.push_back(cone_json(c));
  j["cones"] = std::move(cones);
  Json faces = Json::array();
  for (const auto& fm : complex.face_maps) {
    Json inclusion = Json::object();
    for (const auto& [a, b] : fm.inclusion) inclusion[a] = b;
    faces.push_back(Json{{"face", fm.face}, {"cone", fm.cone}, {"contracted", fm.contracted}, {"inclusion", inclusion}});
  }
  j["face_maps"] = std::move(faces);
  return j;
}

ConeComplex cone_complex_from_json(const Json& j) {
  const Field f(j, "");
  ConeComplex complex;
  complex.n = static_cast<int>(f["n"].as_int());
  for (const auto& s : f["contact_orders"].items()) complex.contact_orders.push_back(read_contact_order(s));
  for (const auto& c : f["cones"].items()) complex.cones.push_back(read_cone(c));
  for (const auto& fm : f["face_maps"].items()) {
    FaceMap m;
    m.face = fm["face"].as_string();
    m.cone = fm["cone"].as_string();
    m.contracted = fm["contracted"].as_string();
    for (const auto& [a, b] : fm["inclusion"].members()) m.inclusion[a] = b.as_string();
    complex.face_maps.push_back(std::move(m));
  }
  return complex;
}

Json to_json(const IsomorphismReport& r) {
  Json j;
  j["n"] = r.n;
  j["sigma"] = to_json(r.sigma);
  j["leg"] = r.leg;
  j["certified"] = r.certified;
  j["types_match"] = r.types_match;
  j["cones_checked"] = r.cones.size();
  j["maximal_cones_checked"] = std::count_if(r.cones.begin(), r.cones.end(), [&](const ConeCertificate& c) {
    return c.source_coords.size() == static_cast<std::size_t>(std::max(r.n - 2, 0));
  });
  Json cones = Json::array();
  for (const auto& c : r.cones)
    cones.push_back(Json{{"type_key", c.type_key},
                         {"source_coords", strings(c.source_coords)},
                         {"target_coords", strings(c.target_coords)},
                         {"matrix", c.matrix},
                         {"determinant", c.determinant},
                         {"unimodular", c.unimodular},
                         {"maps_onto_target", c.maps_onto_target}});
  j["cones"] = std::move(cones);
  j["face_maps_checked"] = r.face_maps_checked;
  j["faces_compatible"] = r.faces_compatible;
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back(Json{{"legs", {w.leg_i, w.leg_j}},
                             {"type_key", w.type_key},
                             {"point", assignment_json(w.point)},
                             {"values", {format_rational(w.value_i), format_rational(w.value_j)}}});
  j["witnesses"] = std::move(witnesses);
  j["legs_without_witness"] = r.legs_without_witness;
  j["notes"] = r.notes;
  return j;
}

IsomorphismReport isomorphism_report_from_json(const Json& j) {
  const Field f(j, "");
  IsomorphismReport r;
  r.n = static_cast<int>(f["n"].as_int());
  r.sigma = read_contact_order(f["sigma"]);
  r.leg = static_cast<LegLabel>(f["leg"].as_int());
  r.certified = f["certified"].as_bool();
  r.types_match = f["types_match"].as_bool();
  for (const auto& c : f["cones"].items()) {
    ConeCertificate cert;
    cert.type_key = c["type_key"].as_string();
    cert.source_coords = read_strings(c["source_coords"]);
    cert.target_coords = read_strings(c["target_coords"]);
    for (const auto& row : c["matrix"].items()) {
      std::vector<std::int64_t> r_;
      for (const auto& x : row.items()) r_.push_back(x.as_int());
      cert.matrix.push_back(std::move(r_));
    }
    cert.determinant = c["determinant"].as_int();
    cert.unimodular = c["unimodular"].as_bool();
    cert.maps_onto_target = c["maps_onto_target"].as_bool();
    r.cones.push_back(std::move(cert));
  }
  r.face_maps_checked = static_cast<std::size_t>(f["face_maps_checked"].as_int());
  r.faces_compatible = f["faces_compatible"].as_bool();
  for (const auto& w : f["witnesses"].items()) {
    SplittingWitness sw;
    const auto legs = w["legs"].items();
    const auto values = w["values"].items();
    if (legs.size() != 2) w["legs"].fail("expected two legs");
    if (values.size() != 2) w["values"].fail("expected two values");
    sw.leg_i = static_cast<LegLabel>(legs[0].as_int());
    sw.leg_j = static_cast<LegLabel>(legs[1].as_int());
    sw.type_key = w["type_key"].as_string();
    sw.point = read_assignment(w["point"]);
    sw.value_i = values[0].as_rational();
    sw.value_j = values[1].as_rational();
    r.witnesses.push_back(std::move(sw));
  }
  for (const auto& l : f["legs_without_witness"].items()) r.legs_without_witness.push_back(static_cast<LegLabel>(l.as_int()));
  r.notes = read_strings(f["notes"]);
  return r;
}

Json to_json(const Fan& fan) {
  Json cones = Json::array();
  for (const auto& c : fan.cones) {
    Json hs = Json::array();
    for (const auto& h : c.halfspaces) hs.push_back(constraint_json(h));
    cones.push_back(Json{{"gens", c.generators}, {"halfspaces", std::move(hs)}, {"dimension", c.dimension}});
  }
  return Json{{"dim", fan.dim}, {"complete", fan.complete}, {"cones", std::move(cones)}};
}

Fan fan_from_json(const Json& j) {
  const Field f(j, "");
  const int dim = static_cast<int>(f["dim"].as_int());
  if (dim < 0) f["dim"].fail("dimension must be nonnegative");
  std::vector<std::vector<IntVector>> gens;
  for (const auto& c : f["cones"].items()) {
    std::vector<IntVector> cone;
    for (const auto& g : c["gens"].items()) {
      IntVector v;
      for (const auto& x : g.items()) v.push_back(x.as_int());
      if (v.size() != static_cast<std::size_t>(dim)) g.fail("generator length differs from dim");
      cone.push_back(std::move(v));
    }
    gens.push_back(std::move(cone));
  }
  const bool complete = f.has("complete") ? f["complete"].as_bool() : true;
  return make_fan(dim, gens, complete);
}

Json to_json(const FanReport& report) {
  return Json{{"valid", report.ok()},
              {"complete", report.complete},
              {"non_face_intersections", report.non_face_intersections},
              {"coverage_gaps", report.coverage_gaps}};
}

Json to_json(const SubdividedCell& cell) {
  Json assignment = Json::object();
  for (const auto& [v, k] : cell.assignment) assignment[std::to_string(v)] = k;
  Json hs = Json::array();
  for (const auto& h : cell.halfspaces) hs.push_back(constraint_json(h));
  return Json{{"parent", cell.parent},
              {"assignment", std::move(assignment)},
              {"halfspaces", std::move(hs)},
              {"witness", assignment_json(cell.witness)},
              {"dimension", cell.dimension}};
}

SubdividedCell cell_from_json(const Json& j) {
  const Field f(j, "");
  SubdividedCell cell;
  cell.parent = f["parent"].as_string();
  for (const auto& [v, k] : f["assignment"].members()) {
    try {
      cell.assignment[std::stoi(v)] = static_cast<std::size_t>(k.as_int());
    } catch (const std::invalid_argument&) {
      k.fail("vertex id must be an integer");
    }
  }
  for (const auto& h : f["halfspaces"].items()) cell.halfspaces.push_back(read_constraint(h));
  cell.witness = read_assignment(f["witness"]);
  cell.dimension = static_cast<int>(f["dimension"].as_int());
  return cell;
}

Json to_json(const SubdivisionResult& result) {
  Json cells = Json::array();
  for (const auto& c : result.cells) cells.push_back(to_json(c));
  const auto& s = result.statistics;
  Json per_cone = Json::object();
  for (const auto& [k, v] : s.cells_per_cone) per_cone[k] = v;
  Json f_vectors = Json::object();
  for (const auto& [k, v] : s.f_vectors) f_vectors[k] = v;
  std::size_t maximal = 0;
  for (const auto* cone : result.complex.maximal_cones()) {
    auto it = s.cells_per_cone.find(cone->type_key);
    if (it != s.cells_per_cone.end()) maximal += it->second;
  }
  return Json{{"complex", to_json(result.complex)},
              {"cells", std::move(cells)},
              {"statistics",
               {{"cells_per_cone", std::move(per_cone)},
                {"total_cells", s.total_cells},
                {"maximal_cells", maximal},
                {"f_vectors", std::move(f_vectors)},
                {"face_maps_checked", s.face_maps_checked},
                {"glued_consistently", s.glued_consistently}}}};
}

SubdivisionResult subdivision_from_json(const Json& j) {
  const Field f(j, "");
  SubdivisionResult r;
  r.complex = cone_complex_from_json(f["complex"].raw());
  for (const auto& c : f["cells"].items()) r.cells.push_back(cell_from_json(c.raw()));
  const Field s = f["statistics"];
  for (const auto& [k, v] : s["cells_per_cone"].members()) r.statistics.cells_per_cone[k] = static_cast<std::size_t>(v.as_int());
  r.statistics.total_cells = static_cast<std::size_t>(s["total_cells"].as_int());
  for (const auto& [k, v] : s["f_vectors"].members()) {
    std::vector<std::size_t> fv;
    for (const auto& x : v.items()) fv.push_back(static_cast<std::size_t>(x.as_int()));
    r.statistics.f_vectors[k] = std::move(fv);
  }
  r.statistics.face_maps_checked = static_cast<std::size_t>(s["face_maps_checked"].as_int());
  r.statistics.glued_consistently = s["glued_consistently"].as_bool();
  return r;
}

Json to_json(const SelfMapNormalForm& form) {
  return Json{{"degree", form.degree},
              {"translation", form.translation.to_string()},
              {"kernel_order", form.kernel_order},
              {"stratum", form.stratum()}};
}

SelfMapNormalForm self_map_from_json(const Json& j) {
  const Field f(j, "");
  SelfMapNormalForm form = classify_self_map(f["degree"].as_int(), f["translation"].as_affine());
  if (f["kernel_order"].as_int() != form.kernel_order) f["kernel_order"].fail("must equal |degree|");
  return form;
}

}  // namespace troplog::json_io
