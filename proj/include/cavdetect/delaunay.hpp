#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cavdetect/geom3.hpp"

namespace cavdetect {

// Raised when fewer than four affinely independent points are supplied.
class InsufficientDimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exactly degenerate configuration defeats the tessellation
// (e.g. a flat cell that survives the symbolic tie-break).
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tetrahedron {
  // Distinct indices into the input point list, sorted ascending.
  std::array<int, 4> vertices;

  bool operator==(const Tetrahedron& o) const { return vertices == o.vertices; }
  bool operator<(const Tetrahedron& o) const { return vertices < o.vertices; }
};

struct Circumsphere {
  Point3 center;
  double radius = 0.0;
};

// Circumcenter and circumradius of four affinely independent points.
// Returns nullopt when the points are coplanar or duplicated within the
// numerical degeneracy tolerance; callers skip or perturb.
std::optional<Circumsphere> circumsphere(const Point3& p1, const Point3& p2, const Point3& p3,
                                         const Point3& p4);

// Delaunay tetrahedralization by incremental insertion (Bowyer-Watson with a
// symbolic ghost vertex for the hull). Points are inserted in input order;
// exact coordinate duplicates are skipped. Every returned tetrahedron
// satisfies the empty-circumsphere property under the tie-broken predicates.
// Throws InsufficientDimensionError for < 4 points or an all-coplanar set.
std::vector<Tetrahedron> delaunay(std::span<const Point3> points);

struct VoronoiVertex {
  Point3 center;                       // circumcenter of the dual tetrahedron
  double radius = 0.0;                 // circumradius
  std::array<int, 4> defining_atoms{};  // the tetrahedron's vertex indices
};

struct VoronoiResult {
  std::vector<VoronoiVertex> vertices;
  int dropped_degenerate = 0;  // tetrahedra whose circumsphere failed the numerical check
};

// One Voronoi vertex per finite Delaunay tetrahedron: the circumcenter with
// its circumradius. Tetrahedra that fail the circumsphere degeneracy check
// (slivers beyond numerical tolerance) are dropped and counted.
VoronoiResult voronoi_vertices(std::span<const Point3> points, std::span<const Tetrahedron> tets);

}  // namespace cavdetect
