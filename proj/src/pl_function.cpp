#include "troplog/pl_function.hpp"

#include "troplog/error.hpp"

#include <algorithm>
#include <numeric>

namespace troplog {

Slope ContactOrder::sum() const { return std::accumulate(slopes.begin(), slopes.end(), Slope{0}); }

bool ContactOrder::is_zero() const {
  return std::all_of(slopes.begin(), slopes.end(), [](Slope s) { return s == 0; });
}

ContactOrder operator+(const ContactOrder& a, const ContactOrder& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "contact orders of different length");
  ContactOrder out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out.slopes[i] += b.slopes[i];
  return out;
}

Slope PLFunction::slope(std::size_t edge, VertexId from) const {
  const Edge& e = tree.edges.at(edge);
  if (e.ends[0] == from) return edge_slopes.at(edge);
  if (e.ends[1] == from) return -edge_slopes.at(edge);
  throw Error(ErrorCode::InvalidInput,
              "vertex " + std::to_string(from) + " is not an end of edge " + std::to_string(edge));
}

Slope PLFunction::leg_slope(LegLabel label) const {
  if (label < 1 || static_cast<std::size_t>(label) > leg_slopes.size())
    throw Error(ErrorCode::NoSuchLeg, "no leg labelled " + std::to_string(label));
  return leg_slopes[static_cast<std::size_t>(label - 1)];
}

Slope Multidegree::total() const {
  Slope total = 0;
  for (const auto& [_, d] : degrees) total += d;
  return total;
}

bool Multidegree::is_zero() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto& kv) { return kv.second == 0; });
}

std::vector<std::string> validate_function(const PLFunction& f) {
  std::vector<std::string> issues;
  for (const auto& issue : validate_tree(f.tree).issues)
    if (issue.kind != ValidationIssue::Kind::ZeroLength) issues.push_back(issue.message);
  if (!f.tree.has_vertex(f.basepoint))
    issues.push_back("basepoint " + std::to_string(f.basepoint) + " is not a vertex");
  if (f.edge_slopes.size() != f.tree.edges.size())
    issues.push_back("expected " + std::to_string(f.tree.edges.size()) + " edge slopes, got " +
                     std::to_string(f.edge_slopes.size()));
  if (f.leg_slopes.size() != f.tree.legs.size())
    issues.push_back("expected " + std::to_string(f.tree.legs.size()) + " leg slopes, got " +
                     std::to_string(f.leg_slopes.size()));
  return issues;
}

namespace {

void require_valid(const PLFunction& f) {
  const auto issues = validate_function(f);
  if (!issues.empty()) throw Error(ErrorCode::InvalidInput, "invalid function: " + issues.front());
}

}  // namespace

std::map<VertexId, AffineExpr> vertex_values(const PLFunction& f) {
  require_valid(f);
  std::map<VertexId, AffineExpr> values;
  values.emplace(f.basepoint, f.base_value);
  std::vector<VertexId> stack{f.basepoint};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (std::size_t e : f.tree.incident_edges(v)) {
      const VertexId w = f.tree.other_end(e, v);
      AffineExpr candidate = values.at(v) + f.tree.length_expr(e) * Rational(f.slope(e, v));
      auto [it, inserted] = values.emplace(w, candidate);
      if (inserted)
        stack.push_back(w);
      else if (it->second != candidate)
        throw Error(ErrorCode::InvalidInput, "path-dependent value at vertex " + std::to_string(w));
    }
  }
  return values;
}

AffineExpr value_at(const PLFunction& f, VertexId v) {
  auto values = vertex_values(f);
  auto it = values.find(v);
  if (it == values.end()) throw Error(ErrorCode::InvalidInput, "no vertex " + std::to_string(v));
  return it->second;
}

Multidegree multidegree(const PLFunction& f) {
  require_valid(f);
  Multidegree md;
  for (VertexId v : f.tree.vertices) md.degrees[v] = 0;
  for (std::size_t e = 0; e < f.tree.edges.size(); ++e) {
    const auto [a, b] = f.tree.edges[e].ends;
    md.degrees[a] += f.edge_slopes[e];
    md.degrees[b] -= f.edge_slopes[e];
  }
  for (const Leg& leg : f.tree.legs) md.degrees[leg.at] += f.leg_slope(leg.label);
  return md;
}

bool is_balanced(const PLFunction& f) { return multidegree(f).is_zero(); }

ContactOrder contact_order(const PLFunction& f) { return ContactOrder{f.leg_slopes}; }

PLFunction extend_from_leg_slopes(const Tree& tree, const ContactOrder& sigma, VertexId basepoint,
                                  const AffineExpr& base_value) {
  if (sigma.size() != tree.legs.size())
    throw Error(ErrorCode::LengthMismatch, "contact order has " + std::to_string(sigma.size()) +
                                               " entries but the tree has " +
                                               std::to_string(tree.legs.size()) + " legs");
  if (!sigma.in_balanced_subgroup())
    throw Error(ErrorCode::NonZeroSum,
                "contact orders sum to " + std::to_string(sigma.sum()) + ", not zero");
  if (!tree.has_vertex(basepoint))
    throw Error(ErrorCode::InvalidInput, "basepoint " + std::to_string(basepoint) + " is not a vertex");

  PLFunction f;
  f.tree = tree;
  f.basepoint = basepoint;
  f.base_value = base_value;
  f.leg_slopes = sigma.slopes;
  f.edge_slopes.assign(tree.edges.size(), 0);
  for (const Leg& leg : tree.legs)
    if (leg.label < 1 || static_cast<std::size_t>(leg.label) > sigma.size())
      throw Error(ErrorCode::InvalidInput, "leg label " + std::to_string(leg.label) + " out of range");
  require_valid(f);

  std::map<VertexId, Slope> leg_sum;
  for (const Leg& leg : tree.legs) leg_sum[leg.at] += sigma.slopes[static_cast<std::size_t>(leg.label - 1)];

  // Order vertices outward from the basepoint, then sweep back: the slope
  // from a parent into a child is the leg sum of the child's side.
  std::vector<VertexId> order{basepoint};
  std::map<VertexId, std::size_t> parent_edge;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId v = order[i];
    for (std::size_t e : tree.incident_edges(v)) {
      const VertexId w = tree.other_end(e, v);
      if (w == basepoint || parent_edge.count(w)) continue;
      parent_edge.emplace(w, e);
      order.push_back(w);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (v == basepoint) break;
    const std::size_t e = parent_edge.at(v);
    const VertexId parent = tree.other_end(e, v);
    const Slope side = leg_sum[v];
    f.edge_slopes[e] = tree.edges[e].ends[1] == v ? side : -side;
    leg_sum[parent] += side;
  }
  return f;
}

PLFunction add(const PLFunction& f, const PLFunction& g) {
  if (!(f.tree == g.tree)) throw Error(ErrorCode::InvalidInput, "functions live on different trees");
  require_valid(f);
  require_valid(g);
  PLFunction out = f;
  out.base_value = f.base_value + value_at(g, f.basepoint);
  for (std::size_t e = 0; e < out.edge_slopes.size(); ++e) out.edge_slopes[e] += g.edge_slopes[e];
  for (std::size_t i = 0; i < out.leg_slopes.size(); ++i) out.leg_slopes[i] += g.leg_slopes[i];
  return out;
}

}  // namespace troplog
