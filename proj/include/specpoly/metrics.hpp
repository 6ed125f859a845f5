#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "specpoly/polyc.hpp"
#include "specpoly/spectra.hpp"

namespace specpoly {

enum class DistanceMethod { Exact, SampledLower };

struct DistanceReport {
  double value = 0.0;
  Eigen::VectorXd from_point;  // witness in the first set
  Eigen::VectorXd to_point;    // nearest point found in the second set
  DistanceMethod method = DistanceMethod::Exact;
};

// Euclidean distance from a point to conv(vertices) + cone(directions).
DistanceReport dist_point_polytope(const Eigen::VectorXd& p, const VRep& q);

// Hausdorff distance of two compact polytopes; the excess of a polytope over
// a convex set is attained at a vertex, so vertex-to-hull maxima are exact.
DistanceReport hausdorff_polytopes(const VRep& p, const VRep& q);

// Hausdorff distance of the unit-ball truncations of two line-free
// polyhedral cones, evaluated on unit generators: for ||x|| <= 1 the
// distance to K ∩ B equals the distance to K, and each one-sided excess is
// taken over the generators.  Exact whenever the excess is attained at an
// extreme ray (always in the plane, and for the narrow nested cone pairs the
// approximation drivers produce); a lower bound in general.
DistanceReport truncated_hausdorff(const std::vector<Eigen::VectorXd>& k1,
                                   const std::vector<Eigen::VectorXd>& k2);

// Sampled, certified lower bound on the truncated Hausdorff distance between
// a polyhedral cone and a spectrahedral cone.  Directions come from a
// deterministic low-discrepancy sphere sequence plus the generators
// themselves; distances from spectrahedral members to the polyhedral cone
// are exact projections, distances from polyhedral members to the
// spectrahedral cone are certified by supporting halfspaces.
struct ConeDistanceBounds {
  DistanceReport lower;  // method == SampledLower
  long directions_checked = 0;
};
ConeDistanceBounds truncated_hausdorff_vs_spectrahedral_cone(
    const std::vector<Eigen::VectorXd>& generators, const Spectrahedron& cone,
    int n_directions = 10000);

// Local Hausdorff bound 2 (eps + delta (r + ||x - v||)) valid on balls
// B_r(x) once the global vertex excess is within eps and the recession cones
// are within delta in truncated Hausdorff distance.
double phda_bound(double eps, double delta, double r, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& v);

struct SelfBoundedness {
  bool classic = false;  // P contained in a translate of its recession cone
  std::optional<Eigen::VectorXd> classic_witness;  // y with P ⊆ y + recc P
  bool extended = false;  // P = V + recc P for some bounded V (always true
                          // for a line-free polyhedron given in V-form)
  double extended_bound = 0.0;  // exc(P, recc P), radius of the bounded part
};
SelfBoundedness self_bounded(const VRep& p);

// exc(P, recc P) = max over vertices of the distance to the recession cone.
DistanceReport exc_over_recession(const VRep& p);

// Deterministic quasi-uniform unit directions (Halton sequence pushed
// through the inverse normal map).  Exposed for sampling validators.
std::vector<Eigen::VectorXd> sphere_directions(int dim, int count);

}  // namespace specpoly
