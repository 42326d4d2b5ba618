#pragma once

#include "troplog/affine.hpp"
#include "troplog/rational.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace troplog {

using VertexId = int;
using LegLabel = int;

struct Edge {
  std::array<VertexId, 2> ends{};
  /// Concrete nonnegative length, or nullopt for a symbolic length coordinate.
  std::optional<Rational> length;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Leg {
  LegLabel label = 0;
  VertexId at = 0;

  friend bool operator==(const Leg&, const Leg&) = default;
};

/// A genus-0 tropical curve: a finite tree with metric (or symbolic) edges and
/// unbounded legs labelled 1..n. Edge indices into `edges` are the edge ids.
struct Tree {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::vector<Leg> legs;

  std::size_t leg_count() const { return legs.size(); }
  bool is_concrete() const;
  bool has_vertex(VertexId v) const;

  /// Throws Error(NoSuchLeg).
  const Leg& leg(LegLabel label) const;

  /// Edges plus legs incident to `v`.
  std::size_t valence(VertexId v) const;
  std::vector<std::size_t> incident_edges(VertexId v) const;
  std::vector<LegLabel> legs_at(VertexId v) const;
  VertexId other_end(std::size_t edge, VertexId v) const;

  /// Name of the length coordinate of a symbolic edge.
  static std::string length_symbol(std::size_t edge);

  /// The concrete length as a constant, or the edge's length symbol.
  AffineExpr length_expr(std::size_t edge) const;

  friend bool operator==(const Tree&, const Tree&) = default;
};

struct ValidationIssue {
  enum class Kind {
    EmptyTree,
    DuplicateVertex,
    UnknownVertex,
    SelfLoop,
    Cycle,
    Disconnected,
    DuplicateLegLabel,
    LegLabelRange,
    NegativeLength,
    ZeroLength,
  };
  Kind kind;
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

std::string_view to_string(ValidationIssue::Kind kind);

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(ValidationIssue::Kind kind) const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Lists every violated invariant; an empty report means the tree is valid.
ValidationReport validate_tree(const Tree& tree);

/// Removes edge `edge` and merges its endpoints into the smaller vertex id.
/// Legs and other edges keep their lengths. Throws Error(NoSuchEdge).
Tree contract_edge(const Tree& tree, std::size_t edge);

/// Leg labels on the side of `edge` away from the smallest leg label.
std::vector<LegLabel> edge_split(const Tree& tree, std::size_t edge);

/// Deterministic key equal for two trees iff a leg-preserving isomorphism
/// exists. Lengths are ignored.
std::string canonical_key(const Tree& tree);

/// A combinatorial type: the canonically relabelled tree with all lengths
/// symbolic. Vertices are numbered in canonical preorder and edge i leads to
/// vertex i + 1, so isomorphic inputs yield identical trees.
struct CombinatorialType {
  Tree tree;
  std::string key;

  friend bool operator==(const CombinatorialType& a, const CombinatorialType& b) {
    return a.key == b.key;
  }
  friend auto operator<=>(const CombinatorialType& a, const CombinatorialType& b) {
    return a.key <=> b.key;
  }
};

CombinatorialType combinatorial_type(const Tree& tree);

struct TypeFilter {
  bool stable_only = true;
  /// Keep only types where every vertex has valence exactly 3.
  bool trivalent_only = false;
  /// Vertex-count cap; required (> 0) when `stable_only` is false.
  std::size_t max_vertices = 0;
};

/// All isomorphism classes of trees with legs 1..n, sorted by key.
/// Throws Error(UnstableRange) when stable_only and n < 3.
std::vector<CombinatorialType> enumerate_tree_types(int n, const TypeFilter& filter = {});

}  // namespace troplog
