#include "specpoly/spectra.hpp"

#include <cmath>
#include <utility>

namespace specpoly {

Spectrahedron::Spectrahedron(SymMatrix a0, std::vector<SymMatrix> coefficients)
    : a0_(std::move(a0)), coefficients_(std::move(coefficients)) {
  require(!coefficients_.empty(), ErrorKind::InvalidInput,
          "pencil needs at least one coefficient matrix");
  for (const SymMatrix& a : coefficients_) {
    require(a.dim() == a0_.dim(), ErrorKind::InvalidInput,
            "pencil coefficient dimension mismatch");
  }
}

SymMatrix Spectrahedron::evaluate(const Eigen::VectorXd& x) const {
  require(x.size() == ambient_dim(), ErrorKind::InvalidInput,
          "point dimension does not match pencil");
  Eigen::MatrixXd acc = a0_.mat();
  for (int i = 0; i < ambient_dim(); ++i) {
    acc += x(i) * coefficients_[i].mat();
  }
  return SymMatrix(acc);
}

SymMatrix Spectrahedron::evaluate_linear(const Eigen::VectorXd& x) const {
  require(x.size() == ambient_dim(), ErrorKind::InvalidInput,
          "point dimension does not match pencil");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(pencil_dim(), pencil_dim());
  for (int i = 0; i < ambient_dim(); ++i) {
    acc += x(i) * coefficients_[i].mat();
  }
  return SymMatrix(acc);
}

Membership Spectrahedron::contains(const Eigen::VectorXd& x) const {
  SymMatrix a = evaluate(x);
  double margin = min_eigenpair(a).value;
  return Membership{margin >= -psd_tolerance(a), margin};
}

Spectrahedron Spectrahedron::recession() const {
  return Spectrahedron(SymMatrix::zero(pencil_dim()), coefficients_);
}

bool Spectrahedron::is_cone(double tol) const {
  double scale = 0.0;
  for (const SymMatrix& a : coefficients_) {
    scale = std::max(scale, a.frobenius_norm());
  }
  return a0_.frobenius_norm() <= tol * (1.0 + scale);
}

Eigen::VectorXd polar_interior_direction(const Spectrahedron& c) {
  Eigen::VectorXd w(c.ambient_dim());
  double scale = 0.0;
  for (int i = 0; i < c.ambient_dim(); ++i) {
    w(i) = -c.coefficient(i).mat().trace();
    scale = std::max(scale, c.coefficient(i).frobenius_norm());
  }
  require(w.norm() > 1e-12 * (1.0 + scale), ErrorKind::DegenerateDirection,
          "all coefficient traces vanish; no canonical polar direction");
  return w / w.norm();
}

SliceChart::SliceChart(Eigen::VectorXd base, Eigen::MatrixXd basis)
    : base_(std::move(base)), basis_(std::move(basis)) {
  require(basis_.rows() == base_.size() && basis_.cols() >= 1,
          ErrorKind::InvalidInput, "chart basis shape mismatch");
  Eigen::MatrixXd gram =
      basis_.transpose() * basis_ -
      Eigen::MatrixXd::Identity(basis_.cols(), basis_.cols());
  require(gram.cwiseAbs().maxCoeff() <= 1e-10, ErrorKind::InvalidInput,
          "chart basis columns must be orthonormal");
}

SliceChart SliceChart::hyperplane(const Eigen::VectorXd& w, double offset) {
  const Eigen::Index n = w.size();
  require(n >= 2, ErrorKind::InvalidInput,
          "hyperplane chart needs ambient dimension >= 2");
  require(std::abs(w.norm() - 1.0) <= 1e-10, ErrorKind::InvalidInput,
          "hyperplane normal must be unit length");
  // Householder reflector mapping e_n to w; its remaining columns form an
  // orthonormal basis of the orthogonal complement of w.
  Eigen::VectorXd q = w;
  q(n - 1) -= 1.0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  double qq = q.squaredNorm();
  if (qq > 1e-24) {
    h -= (2.0 / qq) * (q * q.transpose());
  }
  return SliceChart(offset * w, h.leftCols(n - 1));
}

Eigen::VectorXd SliceChart::lift(const Eigen::VectorXd& y) const {
  require(y.size() == slice_dim(), ErrorKind::InvalidInput,
          "chart coordinate dimension mismatch");
  return base_ + basis_ * y;
}

Eigen::VectorXd SliceChart::coordinates(const Eigen::VectorXd& x) const {
  require(x.size() == ambient_dim(), ErrorKind::InvalidInput,
          "ambient point dimension mismatch");
  return basis_.transpose() * (x - base_);
}

Spectrahedron restrict_to_slice(const Spectrahedron& c, const SliceChart& chart) {
  require(chart.ambient_dim() == c.ambient_dim(), ErrorKind::InvalidInput,
          "chart ambient dimension does not match pencil");
  SymMatrix b0 = c.evaluate(chart.base());
  std::vector<SymMatrix> coeffs;
  coeffs.reserve(chart.slice_dim());
  for (int j = 0; j < chart.slice_dim(); ++j) {
    coeffs.push_back(c.evaluate_linear(chart.basis().col(j)));
  }
  return Spectrahedron(std::move(b0), std::move(coeffs));
}

Spectrahedron intersect_halfspace_lmi(const Spectrahedron& c,
                                      const Eigen::VectorXd& a, double beta) {
  require(a.size() == c.ambient_dim(), ErrorKind::InvalidInput,
          "halfspace normal dimension mismatch");
  require(a.norm() > 0.0, ErrorKind::InvalidInput,
          "halfspace normal must be nonzero");
  const int m = c.pencil_dim();
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(m + 1, m + 1);
  a0.topLeftCorner(m, m) = c.constant_term().mat();
  a0(m, m) = -beta;
  std::vector<SymMatrix> coeffs;
  coeffs.reserve(c.ambient_dim());
  for (int i = 0; i < c.ambient_dim(); ++i) {
    Eigen::MatrixXd ai = Eigen::MatrixXd::Zero(m + 1, m + 1);
    ai.topLeftCorner(m, m) = c.coefficient(i).mat();
    ai(m, m) = a(i);
    coeffs.emplace_back(ai);
  }
  return Spectrahedron(SymMatrix(a0), std::move(coeffs));
}

}  // namespace specpoly
