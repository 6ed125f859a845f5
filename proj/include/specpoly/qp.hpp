#pragma once

#include <vector>

#include <Eigen/Dense>

#include "specpoly/errors.hpp"

namespace specpoly {

struct ProjectionResult {
  double distance;
  Eigen::VectorXd point;           // nearest point of conv(V) + cone(D) to p
  Eigen::VectorXd vertex_weights;  // lambda >= 0, sum lambda = 1 (if V nonempty)
  Eigen::VectorXd ray_weights;     // mu >= 0
  double kkt_residual;
  int iterations;
};

// Euclidean projection of p onto conv(vertices) + cone(rays) by an active-set
// method on the bound-constrained least-squares formulation
//   min ||[V D] [lambda; mu] - p||^2,  lambda, mu >= 0,  sum lambda = 1.
// With an empty vertex list the target is the cone alone (which contains 0).
// Deterministic: ties in pivot selection go to the smallest index.  Throws
// ErrorKind::NoConvergence after 10 * (|V| + |D|) iterations and
// ErrorKind::InvalidInput when both generator lists are empty.
ProjectionResult project_point(const Eigen::VectorXd& p,
                               const std::vector<Eigen::VectorXd>& vertices,
                               const std::vector<Eigen::VectorXd>& rays,
                               double kkt_tol = 1e-8);

}  // namespace specpoly
