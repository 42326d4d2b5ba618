#pragma once

#include "troplog/feasibility.hpp"
#include "troplog/pl_function.hpp"
#include "troplog/tree.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace troplog {

enum class CoordinateSign { Nonnegative, Free };

struct Coordinate {
  std::string name;
  CoordinateSign sign = CoordinateSign::Nonnegative;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// A rational polyhedral cone (possibly with lineality) in named coordinates:
/// the points where every facet functional is >= 0.
struct Cone {
  std::string name;
  std::vector<Coordinate> coords;
  std::vector<AffineExpr> facets;
  int dimension = 0;

  std::vector<std::string> coordinate_names() const;
  System system() const;

  friend bool operator==(const Cone&, const Cone&) = default;
};

/// Fills in `facets` from the coordinate signs and computes `dimension`.
Cone make_cone(std::string name, std::vector<Coordinate> coords);

/// One cone of a moduli complex: a combinatorial type (symbolic tree), its
/// chart, and for map moduli the universal balanced function per target
/// coordinate, expressed in the chart's coordinates.
struct ModuliCone {
  std::string type_key;
  Tree tree;
  Cone cone;
  std::vector<PLFunction> functions;

  friend bool operator==(const ModuliCone&, const ModuliCone&) = default;
};

/// `face` is the cone obtained from `cone` by contracting the edge whose
/// length coordinate is `contracted`; `inclusion` sends each face coordinate
/// to the coordinate of `cone` it is identified with.
struct FaceMap {
  std::string face;
  std::string cone;
  std::string contracted;
  std::map<std::string, std::string> inclusion;

  friend bool operator==(const FaceMap&, const FaceMap&) = default;
};

struct ConeComplex {
  int n = 0;
  std::vector<ContactOrder> contact_orders;
  std::vector<ModuliCone> cones;
  std::vector<FaceMap> face_maps;

  const ModuliCone* find(const std::string& type_key) const;
  std::vector<const ModuliCone*> maximal_cones() const;
  int max_dimension() const;

  friend bool operator==(const ConeComplex&, const ConeComplex&) = default;
};

/// Name of the translation coordinate for target coordinate j of m.
std::string translation_symbol(std::size_t j, std::size_t m);

/// Cone complex of stable genus-0 tropical curves with n legs; one cone per
/// stable type, coordinates are the internal edge lengths.
/// Throws Error(UnstableRange) for n < 3.
ConeComplex build_moduli_complex(int n, int jobs = 1);

/// Map moduli to the tropical torus R^m, one contact order per target
/// coordinate. Each cone has coordinates (edge lengths..., translations...),
/// the translations being the function values at the vertex carrying leg 1.
/// n <= 1 gives the empty complex; n = 2 is routed to the self-map
/// classification and throws Error(UnstableRange).
ConeComplex build_map_moduli(int n, const std::vector<ContactOrder>& sigmas, int jobs = 1);
ConeComplex build_map_moduli(int n, const ContactOrder& sigma, int jobs = 1);

/// A concrete tropical map: a metric tree and one balanced function per
/// target coordinate.
struct TropicalMapPoint {
  Tree tree;
  std::vector<PLFunction> functions;
  std::vector<ContactOrder> contacts;

  friend bool operator==(const TropicalMapPoint&, const TropicalMapPoint&) = default;
};

std::vector<std::string> validate_map_point(const TropicalMapPoint& p);

/// Specializes a map-moduli cone at a point of its chart.
TropicalMapPoint point_on_cone(const ModuliCone& cone, const Assignment& coords);

/// Value of the function at the vertex carrying leg `leg`.
AffineExpr splitting_at_leg(const PLFunction& f, LegLabel leg);

/// Same for a point with a single target coordinate.
/// Throws Error(NoSuchLeg), or Error(InvalidInput) when m != 1.
Rational splitting_at_leg(const TropicalMapPoint& p, LegLabel leg);

/// Contracts the unstable vertices where every function is locally constant
/// until none remain. Two edges through a removed 2-valent vertex merge and
/// their lengths add.
TropicalMapPoint stabilize(const TropicalMapPoint& p);

struct ConeCertificate {
  std::string type_key;
  std::vector<std::string> source_coords;
  std::vector<std::string> target_coords;
  /// Row k expresses target coordinate k in the source coordinates.
  std::vector<std::vector<std::int64_t>> matrix;
  std::int64_t determinant = 0;
  bool unimodular = false;
  bool maps_onto_target = false;

  friend bool operator==(const ConeCertificate&, const ConeCertificate&) = default;
};

struct SplittingWitness {
  LegLabel leg_i = 0;
  LegLabel leg_j = 0;
  std::string type_key;
  Assignment point;
  Rational value_i;
  Rational value_j;

  friend bool operator==(const SplittingWitness&, const SplittingWitness&) = default;
};

struct IsomorphismReport {
  int n = 0;
  ContactOrder sigma;
  LegLabel leg = 0;
  bool certified = false;
  bool types_match = false;
  std::vector<ConeCertificate> cones;
  std::size_t face_maps_checked = 0;
  bool faces_compatible = false;
  std::vector<SplittingWitness> witnesses;
  /// Legs j for which no point separates splitting i from splitting j.
  std::vector<LegLabel> legs_without_witness;
  std::vector<std::string> notes;

  friend bool operator==(const IsomorphismReport&, const IsomorphismReport&) = default;
};

/// Name of the free coordinate of the target line in the product.
inline constexpr const char* kProductLine = "u";

/// Certifies build_map_moduli(n, sigma) ~= build_moduli_complex(n) x R via
/// (lengths, c) -> (lengths, splitting at leg `leg`) on every cone.
/// Throws Error(UnstableRange) for n < 3, Error(NonZeroSum), Error(NoSuchLeg).
IsomorphismReport product_decomposition(int n, const ContactOrder& sigma, LegLabel leg, int jobs = 1);

/// A point of `maps` where the splittings at legs i and j differ.
std::optional<SplittingWitness> find_splitting_witness(const ConeComplex& maps, LegLabel i, LegLabel j);

}  // namespace troplog
