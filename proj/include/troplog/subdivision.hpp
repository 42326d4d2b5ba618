#pragma once

#include "troplog/fan.hpp"
#include "troplog/moduli.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace troplog {

/// (vertex, target coordinate) -> the vertex's image coordinate as an affine
/// functional on the parent cone's chart.
using VertexFunctionals = std::map<std::pair<VertexId, std::size_t>, AffineExpr>;

/// A maximal cell of a fan-induced subdivision of a cone: the points of the
/// parent whose vertex images lie in the assigned fan cones.
struct SubdividedCell {
  std::string parent;
  /// vertex -> index of the smallest fan cone containing the vertex's image.
  std::map<VertexId, std::size_t> assignment;
  /// Irredundant description, each constraint in the parent's coordinates.
  System halfspaces;
  Assignment witness;
  int dimension = 0;

  bool contains(const Assignment& point) const;
  bool contains_in_interior(const Assignment& point) const;

  friend bool operator==(const SubdividedCell&, const SubdividedCell&) = default;
};

/// Vertex values of each universal function of a map-moduli cone.
VertexFunctionals vertex_functionals(const ModuliCone& cone);

/// All maximal cells of the subdivision of `parent` pulled back from `fan`.
/// Throws Error(IncompleteFan) unless the fan is complete.
std::vector<SubdividedCell> subdivide_cone(const Cone& parent, const VertexFunctionals& functionals,
                                           const Fan& fan);

/// Counts of distinct nonempty cells (including lower-dimensional walls)
/// by dimension 0..dim(parent).
std::vector<std::size_t> cell_f_vector(const Cone& parent, const VertexFunctionals& functionals,
                                       const Fan& fan);

struct SubdivisionStatistics {
  std::map<std::string, std::size_t> cells_per_cone;
  std::size_t total_cells = 0;
  std::map<std::string, std::vector<std::size_t>> f_vectors;
  std::size_t face_maps_checked = 0;
  bool glued_consistently = false;

  friend bool operator==(const SubdivisionStatistics&, const SubdivisionStatistics&) = default;
};

struct SubdivisionResult {
  ConeComplex complex;
  std::vector<SubdividedCell> cells;
  SubdivisionStatistics statistics;

  friend bool operator==(const SubdivisionResult&, const SubdivisionResult&) = default;
};

/// Subdivides every cone of the map moduli for contact orders `sigmas` (one
/// per fan coordinate) and checks that cells agree across face maps.
SubdivisionResult subdivide_map_moduli(int n, const std::vector<ContactOrder>& sigmas, const Fan& fan,
                                       int jobs = 1);

/// Restricts `big`'s cells to the face length = 0 and compares them with the
/// cells of the face cone, after renaming coordinates through the inclusion.
bool cells_agree_on_face(const ModuliCone& big, const std::vector<SubdividedCell>& big_cells,
                         const ModuliCone& small, const std::vector<SubdividedCell>& small_cells,
                         const FaceMap& face);

/// Grid points plus random rational points of `cone`, `count` in total.
std::vector<Assignment> sample_cone_points(const Cone& cone, std::size_t count, std::mt19937_64& rng);

struct CoverCheck {
  std::size_t points = 0;
  std::size_t uncovered = 0;
  /// Points interior to some cell that also lie in another cell.
  std::size_t interior_overlaps = 0;

  bool ok() const { return uncovered == 0 && interior_overlaps == 0; }
};

CoverCheck check_cover(const std::vector<SubdividedCell>& cells, const std::vector<Assignment>& points);

}  // namespace troplog
