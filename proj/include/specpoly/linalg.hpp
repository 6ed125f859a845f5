#pragma once

#include <Eigen/Dense>

#include "specpoly/errors.hpp"

namespace specpoly {

// Dense real symmetric matrix.  Construction symmetrizes (S + S^T)/2 and
// rejects non-finite entries, so downstream code can rely on exact symmetry.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::MatrixXd m);

  static SymMatrix zero(int dim);
  static SymMatrix identity(int dim);
  static SymMatrix diagonal(const Eigen::VectorXd& d);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& mat() const { return mat_; }
  double operator()(int i, int j) const { return mat_(i, j); }
  double frobenius_norm() const { return mat_.norm(); }

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  SymMatrix scaled(double s) const;

 private:
  Eigen::MatrixXd mat_;
};

struct EigenPair {
  double value;
  Eigen::VectorXd vector;  // unit norm, first nonzero component positive
};

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns aligned with values, sign-normalized
};

// Scale-aware positive-semidefiniteness slack: 1e-8 * (1 + ||S||_F).
double psd_tolerance(const SymMatrix& s);

// Full spectral decomposition, eigenvalues ascending.  Each eigenvector is
// unit length with its first component of magnitude > 1e-12 made positive,
// so repeated calls on equal inputs give bitwise-identical output.
EigenDecomposition eigen_sym(const SymMatrix& s);

// Smallest eigenvalue and a matching sign-normalized unit eigenvector.
EigenPair min_eigenpair(const SymMatrix& s);

// Frobenius inner product <A, B> = trace(A B).
double trace_inner(const SymMatrix& a, const SymMatrix& b);

// Solve S x = b for symmetric positive definite S via Cholesky.
// Throws ErrorKind::NotPositiveDefinite when the factorization fails.
Eigen::VectorXd solve_spd(const SymMatrix& s, const Eigen::VectorXd& b);

}  // namespace specpoly
