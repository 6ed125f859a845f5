#pragma once

#include <vector>

#include <Eigen/Dense>

#include "specpoly/errors.hpp"

namespace specpoly {

// Geometric incidence tolerance: a point is "on" a hyperplane, a row is
// "active", a ray is "tangent" when the residual is within this bound.
inline constexpr double kGeoTol = 1e-7;
// Two vertices / rows / directions closer than this are the same object.
inline constexpr double kDedupTol = 1e-9;

// Inequality description: rows a_i^T x <= b_i, each a_i unit length.
struct HRep {
  Eigen::MatrixXd a;  // one row per inequality
  Eigen::VectorXd b;
};

// Generator description: conv(vertices) + cone(directions).
struct VRep {
  std::vector<Eigen::VectorXd> vertices;
  std::vector<Eigen::VectorXd> directions;  // unit length, pairwise non-opposite
  int dim = 0;
};

// Polyhedron carried in both representations simultaneously, kept in sync by
// incremental halfspace insertion (double description).  Only line-free
// polyhedra with at least one vertex are representable.
class PolyBundle {
 public:
  // Wrap existing data; validates mutual consistency of the two forms.
  PolyBundle(VRep v, HRep h);

  // Vertex enumeration of a bounded H-representation by exhaustive
  // n-row-subset solves.  Intended for small seed systems (simplex, box).
  static PolyBundle from_bounded_hrep(const HRep& h);

  // Axis-aligned box [lo, hi], assembled directly.
  static PolyBundle axis_box(const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi);

  // Intersect with { x : a^T x <= beta }.  Updates vertices, directions and
  // rows; throws ErrorKind::EmptyPolyhedron when the intersection has no
  // point left.  The bundle is unchanged when an exception is thrown.
  void insert_halfspace(const Eigen::VectorXd& a, double beta);

  const std::vector<Eigen::VectorXd>& vertices() const { return v_.vertices; }
  const std::vector<Eigen::VectorXd>& rays() const { return v_.directions; }
  const HRep& hrep() const { return h_; }
  const VRep& vrep() const { return v_; }
  int dim() const { return v_.dim; }

  bool feasible(const Eigen::VectorXd& x, double tol = kGeoTol) const;

 private:
  PolyBundle() = default;
  void validate() const;

  VRep v_;
  HRep h_;
};

// Facet description {x : r^T x <= 0} of a pointed cone given by generators.
// When the generators do not span the ambient space, paired +/- rows pin the
// cone to its linear span.  Throws ErrorKind::NotPointed when the conic hull
// of the generators contains a line.
HRep cone_facets(const std::vector<Eigen::VectorXd>& generators);

// Minkowski sum of a polyhedron with the scaled l1 ball: vertex candidates
// v +/- rho * e_i, reduced to the extreme ones.  Directions are unchanged.
VRep minkowski_l1(const VRep& p, double rho);

// Minimal generator list of cone(points): nonzero points are normalized,
// duplicates merged (lexicographically smallest representative kept), and
// conically redundant generators removed.  Throws ErrorKind::NotPointed when
// the hull contains a line.
std::vector<Eigen::VectorXd> conical_hull(
    const std::vector<Eigen::VectorXd>& points);

// Minkowski sum P + cone(generators) in generator form, pruned to extreme
// vertices and extreme directions.
VRep sum_with_cone(const VRep& p,
                   const std::vector<Eigen::VectorXd>& generators);

}  // namespace specpoly
