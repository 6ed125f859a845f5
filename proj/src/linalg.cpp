#include "specpoly/linalg.hpp"

#include <cmath>

namespace specpoly {

namespace {

// Deterministic eigenvector orientation: flip so the first component with
// magnitude above 1e-12 is positive.  Keeps output stable across runs and
// across equal-matrix inputs regardless of solver-internal sign choices.
void normalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

SymMatrix::SymMatrix(Eigen::MatrixXd m) {
  require(m.rows() == m.cols() && m.rows() >= 1, ErrorKind::InvalidInput,
          "symmetric matrix must be square and nonempty");
  require(m.allFinite(), ErrorKind::InvalidInput,
          "symmetric matrix entries must be finite");
  mat_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zero(int dim) {
  return SymMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

SymMatrix SymMatrix::identity(int dim) {
  return SymMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& d) {
  return SymMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  return SymMatrix(mat_ + other.mat_);
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  return SymMatrix(mat_ - other.mat_);
}

SymMatrix SymMatrix::scaled(double s) const { return SymMatrix(s * mat_); }

double psd_tolerance(const SymMatrix& s) {
  return 1e-8 * (1.0 + s.frobenius_norm());
}

EigenDecomposition eigen_sym(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.mat());
  require(solver.info() == Eigen::Success, ErrorKind::NoConvergence,
          "symmetric eigendecomposition failed to converge");
  EigenDecomposition out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    normalize_sign(out.vectors.col(c));
  }
  return out;
}

EigenPair min_eigenpair(const SymMatrix& s) {
  EigenDecomposition d = eigen_sym(s);
  return EigenPair{d.values(0), d.vectors.col(0)};
}

double trace_inner(const SymMatrix& a, const SymMatrix& b) {
  require(a.dim() == b.dim(), ErrorKind::InvalidInput,
          "trace inner product needs equal dimensions");
  return (a.mat().array() * b.mat().array()).sum();
}

Eigen::VectorXd solve_spd(const SymMatrix& s, const Eigen::VectorXd& b) {
  require(b.size() == s.dim(), ErrorKind::InvalidInput,
          "right-hand side size must match matrix dimension");
  Eigen::LLT<Eigen::MatrixXd> llt(s.mat());
  require(llt.info() == Eigen::Success, ErrorKind::NotPositiveDefinite,
          "Cholesky solve requires a positive definite matrix");
  return llt.solve(b);
}

}  // namespace specpoly
