#pragma once

#include <vector>

#include <Eigen/Dense>

#include "specpoly/linalg.hpp"

namespace specpoly {

struct Membership {
  bool inside;
  double margin;  // smallest eigenvalue of the pencil at the queried point
};

// Feasible set of a linear matrix inequality
//   C = { x in R^n : A(x) = A0 + sum_i x_i A_i  is positive semidefinite }.
class Spectrahedron {
 public:
  Spectrahedron(SymMatrix a0, std::vector<SymMatrix> coefficients);

  int ambient_dim() const { return static_cast<int>(coefficients_.size()); }
  int pencil_dim() const { return a0_.dim(); }
  const SymMatrix& constant_term() const { return a0_; }
  const SymMatrix& coefficient(int i) const { return coefficients_.at(i); }

  // A(x) = A0 + sum_i x_i A_i
  SymMatrix evaluate(const Eigen::VectorXd& x) const;
  // Homogeneous part only: sum_i x_i A_i
  SymMatrix evaluate_linear(const Eigen::VectorXd& x) const;

  // Membership with tolerance: inside iff lambda_min(A(x)) >= -psd_tolerance.
  Membership contains(const Eigen::VectorXd& x) const;

  // The recession cone {x : sum_i x_i A_i psd}, itself a spectrahedron.
  Spectrahedron recession() const;

  // True when the constant term vanishes, i.e. the set is a cone.
  bool is_cone(double tol = 1e-12) const;

 private:
  SymMatrix a0_;
  std::vector<SymMatrix> coefficients_;
};

// Interior direction of the polar of the recession cone, computed from the
// identity dual slack: w = -(trace A1, ..., trace An), normalized to unit
// length.  Throws ErrorKind::DegenerateDirection when every trace vanishes.
Eigen::VectorXd polar_interior_direction(const Spectrahedron& c);

// Affine chart y -> base + basis * y onto a slice of the ambient space.
// Columns of basis are orthonormal.
class SliceChart {
 public:
  SliceChart(Eigen::VectorXd base, Eigen::MatrixXd basis);

  // Chart of the hyperplane { x : w^T x = offset } for a unit vector w,
  // with orthonormal in-plane basis from a Householder reflector.
  static SliceChart hyperplane(const Eigen::VectorXd& w, double offset);

  int ambient_dim() const { return static_cast<int>(base_.size()); }
  int slice_dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::VectorXd& base() const { return base_; }
  const Eigen::MatrixXd& basis() const { return basis_; }

  Eigen::VectorXd lift(const Eigen::VectorXd& y) const;
  // Chart coordinates of an ambient point (orthogonal projection onto the
  // slice, exact when the point lies on it).
  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd base_;
  Eigen::MatrixXd basis_;
};

// Pull the pencil back through a chart: B(y) = A(base + basis * y).
Spectrahedron restrict_to_slice(const Spectrahedron& c, const SliceChart& chart);

// Append the scalar block a^T x - beta >= 0, encoding C ∩ {a^T x >= beta}
// as one spectrahedron of pencil dimension m + 1.
Spectrahedron intersect_halfspace_lmi(const Spectrahedron& c,
                                      const Eigen::VectorXd& a, double beta);

}  // namespace specpoly
