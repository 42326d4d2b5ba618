#include "troplog/tree.hpp"

#include "troplog/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace troplog {

namespace {

using Adjacency = std::map<VertexId, std::vector<std::pair<std::size_t, VertexId>>>;

Adjacency adjacency(const Tree& tree) {
  Adjacency adj;
  for (VertexId v : tree.vertices) adj[v];
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto [a, b] = tree.edges[e].ends;
    adj[a].emplace_back(e, b);
    adj[b].emplace_back(e, a);
  }
  return adj;
}

std::map<VertexId, std::vector<LegLabel>> legs_by_vertex(const Tree& tree) {
  std::map<VertexId, std::vector<LegLabel>> out;
  for (const Leg& leg : tree.legs) out[leg.at].push_back(leg.label);
  for (auto& [_, labels] : out) std::sort(labels.begin(), labels.end());
  return out;
}

}  // namespace

bool Tree::is_concrete() const {
  return std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.length.has_value(); });
}

bool Tree::has_vertex(VertexId v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

const Leg& Tree::leg(LegLabel label) const {
  for (const Leg& l : legs)
    if (l.label == label) return l;
  throw Error(ErrorCode::NoSuchLeg, "no leg labelled " + std::to_string(label));
}

std::size_t Tree::valence(VertexId v) const { return incident_edges(v).size() + legs_at(v).size(); }

std::vector<std::size_t> Tree::incident_edges(VertexId v) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].ends[0] == v) out.push_back(e);
    if (edges[e].ends[1] == v) out.push_back(e);
  }
  return out;
}

std::vector<LegLabel> Tree::legs_at(VertexId v) const {
  std::vector<LegLabel> out;
  for (const Leg& l : legs)
    if (l.at == v) out.push_back(l.label);
  std::sort(out.begin(), out.end());
  return out;
}

VertexId Tree::other_end(std::size_t edge, VertexId v) const {
  const auto& ends = edges.at(edge).ends;
  if (ends[0] == v) return ends[1];
  if (ends[1] == v) return ends[0];
  throw Error(ErrorCode::InvalidInput,
              "vertex " + std::to_string(v) + " is not an end of edge " + std::to_string(edge));
}

std::string Tree::length_symbol(std::size_t edge) { return "l_e" + std::to_string(edge); }

AffineExpr Tree::length_expr(std::size_t edge) const {
  const Edge& e = edges.at(edge);
  if (e.length) return AffineExpr(*e.length);
  return AffineExpr::symbol(length_symbol(edge));
}

std::string_view to_string(ValidationIssue::Kind kind) {
  using K = ValidationIssue::Kind;
  switch (kind) {
    case K::EmptyTree: return "EmptyTree";
    case K::DuplicateVertex: return "DuplicateVertex";
    case K::UnknownVertex: return "UnknownVertex";
    case K::SelfLoop: return "SelfLoop";
    case K::Cycle: return "Cycle";
    case K::Disconnected: return "Disconnected";
    case K::DuplicateLegLabel: return "DuplicateLegLabel";
    case K::LegLabelRange: return "LegLabelRange";
    case K::NegativeLength: return "NegativeLength";
    case K::ZeroLength: return "ZeroLength";
  }
  return "Unknown";
}

bool ValidationReport::has(ValidationIssue::Kind kind) const {
  return std::any_of(issues.begin(), issues.end(), [kind](const auto& i) { return i.kind == kind; });
}

ValidationReport validate_tree(const Tree& tree) {
  using K = ValidationIssue::Kind;
  ValidationReport report;
  auto issue = [&report](K kind, std::string message) {
    report.issues.push_back({kind, std::move(message)});
  };

  if (tree.vertices.empty()) issue(K::EmptyTree, "tree has no vertices");

  std::set<VertexId> known;
  for (VertexId v : tree.vertices)
    if (!known.insert(v).second) issue(K::DuplicateVertex, "vertex " + std::to_string(v) + " listed twice");

  // Union-find over declared vertices detects cycles and connectivity.
  std::map<VertexId, VertexId> parent;
  for (VertexId v : known) parent[v] = v;
  std::function<VertexId(VertexId)> find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  bool edges_ok = true;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const Edge& edge = tree.edges[e];
    const std::string where = "edge " + std::to_string(e);
    if (edge.length && *edge.length < 0)
      issue(K::NegativeLength, where + " has negative length " + format_rational(*edge.length));
    else if (edge.length && *edge.length == 0)
      issue(K::ZeroLength, where + " has zero length (contract it instead)");
    const auto [a, b] = edge.ends;
    if (!known.count(a) || !known.count(b)) {
      issue(K::UnknownVertex, where + " references an undeclared vertex");
      edges_ok = false;
      continue;
    }
    if (a == b) {
      issue(K::SelfLoop, where + " is a loop at vertex " + std::to_string(a));
      continue;
    }
    const VertexId ra = find(a), rb = find(b);
    if (ra == rb)
      issue(K::Cycle, where + " closes a cycle (genus > 0)");
    else
      parent[ra] = rb;
  }

  if (edges_ok && !known.empty()) {
    std::set<VertexId> roots;
    for (VertexId v : known) roots.insert(find(v));
    if (roots.size() > 1)
      issue(K::Disconnected, "graph has " + std::to_string(roots.size()) + " components");
  }

  std::set<LegLabel> labels;
  for (const Leg& leg : tree.legs) {
    if (!known.count(leg.at))
      issue(K::UnknownVertex, "leg " + std::to_string(leg.label) + " is attached to an undeclared vertex");
    if (!labels.insert(leg.label).second)
      issue(K::DuplicateLegLabel, "leg label " + std::to_string(leg.label) + " repeated");
  }
  const auto n = static_cast<LegLabel>(tree.legs.size());
  for (LegLabel label : labels)
    if (label < 1 || label > n)
      issue(K::LegLabelRange,
            "leg label " + std::to_string(label) + " outside 1.." + std::to_string(n));
  return report;
}

Tree contract_edge(const Tree& tree, std::size_t edge) {
  if (edge >= tree.edges.size())
    throw Error(ErrorCode::NoSuchEdge, "no edge with id " + std::to_string(edge));
  const auto [a, b] = tree.edges[edge].ends;
  const VertexId keep = std::min(a, b);
  const VertexId drop = std::max(a, b);
  auto remap = [&](VertexId v) { return v == drop ? keep : v; };

  Tree out;
  for (VertexId v : tree.vertices)
    if (v != drop || drop == keep) out.vertices.push_back(v);
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    if (e == edge) continue;
    Edge copy = tree.edges[e];
    copy.ends = {remap(copy.ends[0]), remap(copy.ends[1])};
    out.edges.push_back(std::move(copy));
  }
  for (Leg leg : tree.legs) {
    leg.at = remap(leg.at);
    out.legs.push_back(leg);
  }
  return out;
}

std::vector<LegLabel> edge_split(const Tree& tree, std::size_t edge) {
  if (edge >= tree.edges.size())
    throw Error(ErrorCode::NoSuchEdge, "no edge with id " + std::to_string(edge));
  const Adjacency adj = adjacency(tree);
  const auto by_vertex = legs_by_vertex(tree);

  auto side = [&](VertexId start, VertexId blocked) {
    std::vector<LegLabel> labels;
    std::vector<std::pair<VertexId, VertexId>> stack{{start, blocked}};
    while (!stack.empty()) {
      auto [v, from] = stack.back();
      stack.pop_back();
      if (auto it = by_vertex.find(v); it != by_vertex.end())
        labels.insert(labels.end(), it->second.begin(), it->second.end());
      for (const auto& [e, w] : adj.at(v))
        if (w != from) stack.emplace_back(w, v);
    }
    std::sort(labels.begin(), labels.end());
    return labels;
  };
  const auto [a, b] = tree.edges[edge].ends;
  std::vector<LegLabel> sa = side(a, b);
  std::vector<LegLabel> sb = side(b, a);
  if (sa.empty()) return sa;
  if (sb.empty()) return sb;
  return sa.front() < sb.front() ? sb : sa;
}

namespace {

// AHU-style canonical encoding of the subtree hanging below `v`.
struct Encoder {
  const Adjacency& adj;
  const std::map<VertexId, std::vector<LegLabel>>& legs;

  std::string encode(VertexId v, VertexId from, bool has_parent) const {
    std::vector<std::string> parts;
    if (auto it = legs.find(v); it != legs.end())
      for (LegLabel l : it->second) parts.push_back(std::to_string(l));
    std::vector<std::string> children;
    for (const auto& [e, w] : adj.at(v))
      if (!has_parent || w != from) children.push_back(encode(w, v, true));
    std::sort(children.begin(), children.end());
    parts.insert(parts.end(), children.begin(), children.end());
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out + ")";
  }
};

VertexId canonical_root(const Tree& tree) {
  if (tree.legs.empty()) return tree.vertices.empty() ? 0 : tree.vertices.front();
  const Leg& first = *std::min_element(tree.legs.begin(), tree.legs.end(),
                                       [](const Leg& x, const Leg& y) { return x.label < y.label; });
  return first.at;
}

}  // namespace

std::string canonical_key(const Tree& tree) {
  if (tree.vertices.empty()) return "";
  const Adjacency adj = adjacency(tree);
  const auto legs = legs_by_vertex(tree);
  const Encoder enc{adj, legs};
  if (!tree.legs.empty()) return enc.encode(canonical_root(tree), 0, false);
  std::string best;
  for (VertexId v : tree.vertices) {
    std::string key = enc.encode(v, 0, false);
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

CombinatorialType combinatorial_type(const Tree& tree) {
  CombinatorialType type;
  type.key = canonical_key(tree);
  if (tree.vertices.empty()) return type;

  const Adjacency adj = adjacency(tree);
  const auto legs = legs_by_vertex(tree);
  const Encoder enc{adj, legs};

  VertexId root = canonical_root(tree);
  if (tree.legs.empty()) {
    for (VertexId v : tree.vertices)
      if (enc.encode(v, 0, false) == type.key) {
        root = v;
        break;
      }
  }

  Tree& out = type.tree;
  std::function<void(VertexId, VertexId, bool)> visit = [&](VertexId v, VertexId from, bool has_parent) {
    const VertexId id = static_cast<VertexId>(out.vertices.size());
    out.vertices.push_back(id);
    if (auto it = legs.find(v); it != legs.end())
      for (LegLabel l : it->second) out.legs.push_back({l, id});
    std::vector<std::pair<std::string, VertexId>> children;
    for (const auto& [e, w] : adj.at(v))
      if (!has_parent || w != from) children.emplace_back(enc.encode(w, v, true), w);
    std::sort(children.begin(), children.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [_, w] : children) {
      const VertexId child = static_cast<VertexId>(out.vertices.size());
      out.edges.push_back({{id, child}, std::nullopt});
      visit(w, v, true);
    }
  };
  visit(root, 0, false);
  std::sort(out.legs.begin(), out.legs.end(), [](const Leg& x, const Leg& y) { return x.label < y.label; });
  return type;
}

namespace {

bool passes(const Tree& tree, const TypeFilter& filter) {
  for (VertexId v : tree.vertices) {
    const std::size_t val = tree.valence(v);
    if (filter.stable_only && val < 3) return false;
    if (filter.trivalent_only && val != 3) return false;
  }
  return true;
}

Tree star(int n) {
  Tree t;
  t.vertices = {0};
  for (LegLabel l = 1; l <= n; ++l) t.legs.push_back({l, 0});
  return t;
}

// Every stable tree with legs 1..k arises exactly once from a stable tree
// with legs 1..k-1 by attaching leg k at a vertex, or in the middle of an
// edge or a leg.
std::vector<Tree> grow_stable(const std::vector<Tree>& smaller, LegLabel label) {
  std::vector<Tree> out;
  for (const Tree& t : smaller) {
    for (VertexId v : t.vertices) {
      Tree u = t;
      u.legs.push_back({label, v});
      out.push_back(std::move(u));
    }
    const VertexId fresh = static_cast<VertexId>(t.vertices.size());
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      Tree u = t;
      u.vertices.push_back(fresh);
      const VertexId b = u.edges[e].ends[1];
      u.edges[e].ends[1] = fresh;
      u.edges.push_back({{fresh, b}, std::nullopt});
      u.legs.push_back({label, fresh});
      out.push_back(std::move(u));
    }
    for (std::size_t i = 0; i < t.legs.size(); ++i) {
      Tree u = t;
      u.vertices.push_back(fresh);
      u.edges.push_back({{u.legs[i].at, fresh}, std::nullopt});
      u.legs[i].at = fresh;
      u.legs.push_back({label, fresh});
      out.push_back(std::move(u));
    }
  }
  return out;
}

// Labelled trees on vertices 0..k-1 via Pruefer sequences.
std::vector<std::vector<std::array<VertexId, 2>>> labelled_trees(int k) {
  std::vector<std::vector<std::array<VertexId, 2>>> out;
  if (k == 1) {
    out.emplace_back();
    return out;
  }
  if (k == 2) {
    out.push_back({{0, 1}});
    return out;
  }
  std::vector<int> seq(static_cast<std::size_t>(k - 2), 0);
  while (true) {
    std::vector<int> degree(static_cast<std::size_t>(k), 1);
    for (int x : seq) ++degree[static_cast<std::size_t>(x)];
    std::vector<std::array<VertexId, 2>> edges;
    for (int x : seq) {
      for (int leaf = 0; leaf < k; ++leaf) {
        if (degree[static_cast<std::size_t>(leaf)] == 1) {
          edges.push_back({leaf, x});
          --degree[static_cast<std::size_t>(leaf)];
          --degree[static_cast<std::size_t>(x)];
          break;
        }
      }
    }
    std::vector<int> last;
    for (int v = 0; v < k; ++v)
      if (degree[static_cast<std::size_t>(v)] == 1) last.push_back(v);
    edges.push_back({last[0], last[1]});
    out.push_back(std::move(edges));

    std::size_t pos = 0;
    while (pos < seq.size() && ++seq[pos] == k) seq[pos++] = 0;
    if (pos == seq.size()) break;
  }
  return out;
}

}  // namespace

std::vector<CombinatorialType> enumerate_tree_types(int n, const TypeFilter& filter) {
  if (filter.stable_only && n < 3)
    throw Error(ErrorCode::UnstableRange, "stable trees need at least 3 legs, got " + std::to_string(n));
  if (n < 1) throw Error(ErrorCode::InvalidInput, "need at least one leg");

  std::map<std::string, CombinatorialType> found;
  auto consider = [&](const Tree& t) {
    if (!passes(t, filter)) return;
    std::string key = canonical_key(t);
    if (!found.count(key)) found.emplace(key, combinatorial_type(t));
  };

  if (filter.stable_only) {
    std::vector<Tree> level{star(3)};
    for (LegLabel label = 4; label <= n; ++label) level = grow_stable(level, label);
    for (const Tree& t : level) consider(t);
  } else {
    if (filter.max_vertices == 0)
      throw Error(ErrorCode::InvalidInput, "unstable enumeration needs a vertex cap");
    for (int k = 1; k <= static_cast<int>(filter.max_vertices); ++k) {
      for (const auto& shape : labelled_trees(k)) {
        std::vector<int> at(static_cast<std::size_t>(n), 0);
        while (true) {
          Tree t;
          t.vertices.resize(static_cast<std::size_t>(k));
          std::iota(t.vertices.begin(), t.vertices.end(), 0);
          for (const auto& ends : shape) t.edges.push_back({ends, std::nullopt});
          for (int i = 0; i < n; ++i) t.legs.push_back({i + 1, at[static_cast<std::size_t>(i)]});
          consider(t);
          std::size_t pos = 0;
          while (pos < at.size() && ++at[pos] == k) at[pos++] = 0;
          if (pos == at.size()) break;
        }
      }
    }
  }

  std::vector<CombinatorialType> out;
  out.reserve(found.size());
  for (auto& [_, type] : found) out.push_back(std::move(type));
  return out;
}

}  // namespace troplog
