#pragma once

// Reference implementations used only by the tests: brute-force vertex
// enumeration, closed-form distance oracles, deterministic samplers, and
// shared fixture pencils.  Everything here is written independently of the
// library internals so the two sides can meaningfully disagree.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "specpoly/polyc.hpp"
#include "specpoly/spectra.hpp"

namespace oracle {

// --- closed-form distances -------------------------------------------------

inline double dist_to_unit_disk(const Eigen::VectorXd& v) {
  return std::max(0.0, v.norm() - 1.0);
}

inline double dist_to_box(const Eigen::VectorXd& v, const Eigen::VectorXd& lo,
                          const Eigen::VectorXd& hi) {
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    double d = std::max({lo(i) - v(i), v(i) - hi(i), 0.0});
    s += d * d;
  }
  return std::sqrt(s);
}

// Distance to the shifted orthant { x : x >= lower componentwise }.
inline double dist_to_shifted_orthant(const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& lower) {
  return (lower - v).cwiseMax(0.0).norm();
}

// Smallest eigenvalue of [[a, b], [b, c]] in closed form.
inline double min_eig_2x2(double a, double b, double c) {
  double mean = 0.5 * (a + c);
  double rad = std::hypot(0.5 * (a - c), b);
  return mean - rad;
}

// --- point-set comparison ----------------------------------------------------

inline double point_set_hausdorff(const std::vector<Eigen::VectorXd>& p,
                                  const std::vector<Eigen::VectorXd>& q) {
  if (p.empty() && q.empty()) return 0.0;
  if (p.empty() || q.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  auto one_side = [&](const std::vector<Eigen::VectorXd>& from,
                      const std::vector<Eigen::VectorXd>& to) {
    for (const auto& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : to) best = std::min(best, (x - y).norm());
      worst = std::max(worst, best);
    }
  };
  one_side(p, q);
  one_side(q, p);
  return worst;
}

// --- brute-force vertex enumeration -----------------------------------------

// All solutions of n-row subsystems of a x <= b that satisfy every row,
// deduplicated.  The quadratic subset walk is fine at test scale (m <= 12).
inline std::vector<Eigen::VectorXd> hrep_vertices_brute(
    const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
    double feas_tol = 1e-7) {
  const int n = static_cast<int>(a.cols());
  const int m = static_cast<int>(a.rows());
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(n);
  auto visit = [&](const std::vector<int>& rows) {
    Eigen::MatrixXd sub(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      sub.row(i) = a.row(rows[i]);
      rhs(i) = b(rows[i]);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    qr.setThreshold(1e-9);
    if (qr.rank() < n) return;
    Eigen::VectorXd x = qr.solve(rhs);
    double scale = 1.0 + x.lpNorm<Eigen::Infinity>();
    if (((a * x - b).array() > feas_tol * scale).any()) return;
    for (const auto& y : out)
      if ((x - y).norm() <= feas_tol * scale) return;
    out.push_back(std::move(x));
  };
  // Walk all n-combinations of {0, ..., m-1}.
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (m < n) return out;
  while (true) {
    visit(idx);
    int k = n - 1;
    while (k >= 0 && idx[k] == m - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// --- fixture pencils ---------------------------------------------------------

// 4x4 pencil whose feasible set is { x : x1 x2 >= 1, x1 >= 0 } intersected
// with { x : x2 >= x1^2 }: unbounded, line-free, recession cone = ray(e2).
inline specpoly::Spectrahedron hyperbola_parabola_pencil() {
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(4, 4);
  a0(0, 1) = a0(1, 0) = 1.0;
  a0(2, 2) = 1.0;
  Eigen::MatrixXd a1 = Eigen::MatrixXd::Zero(4, 4);
  a1(0, 0) = 1.0;
  a1(2, 3) = a1(3, 2) = 1.0;
  Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(4, 4);
  a2(1, 1) = 1.0;
  a2(3, 3) = 1.0;
  using specpoly::SymMatrix;
  return specpoly::Spectrahedron(
      SymMatrix(a0), {SymMatrix(a1), SymMatrix(a2)});
}

// [[1 + x1, x2], [x2, 1 - x1]]: the closed unit disk.
inline specpoly::Spectrahedron unit_disk_pencil() {
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd a1(2, 2), a2(2, 2);
  a1 << 1, 0, 0, -1;
  a2 << 0, 1, 1, 0;
  using specpoly::SymMatrix;
  return specpoly::Spectrahedron(
      SymMatrix(a0), {SymMatrix(a1), SymMatrix(a2)});
}

// diag(x1, 1 - x1, x2, 1 - x2): the unit square as a diagonal pencil.
inline specpoly::Spectrahedron unit_square_pencil() {
  auto e = [](double d0, double d1, double d2, double d3) {
    Eigen::VectorXd v(4);
    v << d0, d1, d2, d3;
    return specpoly::SymMatrix::diagonal(v);
  };
  return specpoly::Spectrahedron(e(0, 1, 0, 1), {e(1, -1, 0, 0), e(0, 0, 1, -1)});
}

// diag(1 - x1, 1 - x2, 1 + 2 x1 + x2): a compact triangle whose coefficient
// traces do not vanish.
inline specpoly::Spectrahedron triangle_pencil() {
  auto e = [](double d0, double d1, double d2) {
    Eigen::VectorXd v(3);
    v << d0, d1, d2;
    return specpoly::SymMatrix::diagonal(v);
  };
  return specpoly::Spectrahedron(e(1, 1, 1), {e(-1, 0, 2), e(0, -1, 1)});
}

// x1 E11 + x2 E22 + x3 (E12 + E21): coordinates of the 2x2 positive
// semidefinite cone.
inline specpoly::Spectrahedron psd2_cone_pencil() {
  Eigen::MatrixXd a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << 1, 0, 0, 0;
  a2 << 0, 0, 0, 1;
  a3 << 0, 1, 1, 0;
  using specpoly::SymMatrix;
  return specpoly::Spectrahedron(
      SymMatrix::zero(2), {SymMatrix(a1), SymMatrix(a2), SymMatrix(a3)});
}

// diag(x1 - 1, x2 - 1): the shifted orthant [1, inf)^2.
inline specpoly::Spectrahedron shifted_orthant_pencil() {
  auto e = [](double d0, double d1) {
    Eigen::VectorXd v(2);
    v << d0, d1;
    return specpoly::SymMatrix::diagonal(v);
  };
  return specpoly::Spectrahedron(e(-1, -1), {e(1, 0), e(0, 1)});
}

// [[1 + x3 + x1, x2], [x2, 1 + x3 - x1]]: the shifted second-order cone
// { x : x3 + 1 >= ||(x1, x2)|| }.
inline specpoly::Spectrahedron shifted_soc_pencil() {
  Eigen::MatrixXd a1(2, 2), a2(2, 2);
  a1 << 1, 0, 0, -1;
  a2 << 0, 1, 1, 0;
  using specpoly::SymMatrix;
  return specpoly::Spectrahedron(
      SymMatrix::identity(2),
      {SymMatrix(a1), SymMatrix(a2), SymMatrix::identity(2)});
}

// --- samplers ----------------------------------------------------------------

// Rejection-sample members of a spectrahedron inside the box [lo, hi].
inline std::vector<Eigen::VectorXd> sample_members(
    const specpoly::Spectrahedron& c, const Eigen::VectorXd& lo,
    const Eigen::VectorXd& hi, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  int budget = 200 * count;
  while (static_cast<int>(out.size()) < count && budget-- > 0) {
    Eigen::VectorXd x(c.ambient_dim());
    for (int i = 0; i < x.size(); ++i)
      x(i) = lo(i) + (hi(i) - lo(i)) * unit(rng);
    if (c.contains(x).inside) out.push_back(std::move(x));
  }
  return out;
}

// --- random instance factories -----------------------------------------------

// Compact spectrahedron with interior, an exterior query point, and an
// interior anchor: blkdiag(I3 + x1 B1 + x2 B2, diag(3 -/+ x_i)).
struct BoundarySearchInstance {
  specpoly::Spectrahedron c;
  Eigen::VectorXd outside;
  Eigen::VectorXd anchor;
};

inline BoundarySearchInstance random_boundary_search_instance(
    std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double box = 3.0;
  auto block = [&](const Eigen::MatrixXd& top, double lo_row, double hi_row) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(7, 7);
    m.topLeftCorner(3, 3) = top;
    m(3, 3) = lo_row;
    m(4, 4) = hi_row;
    return m;
  };
  Eigen::MatrixXd b1(3, 3), b2(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      b1(i, j) = b1(j, i) = coef(rng);
      b2(i, j) = b2(j, i) = coef(rng);
    }
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(7, 7);
  a0.topLeftCorner(3, 3) = Eigen::MatrixXd::Identity(3, 3);
  a0.diagonal().tail(4).setConstant(box);
  Eigen::MatrixXd m1 = block(b1, -1.0, 1.0);
  m1(5, 5) = 0.0;
  m1(6, 6) = 0.0;
  Eigen::MatrixXd m2 = block(b2, 0.0, 0.0);
  m2(5, 5) = -1.0;
  m2(6, 6) = 1.0;
  using specpoly::SymMatrix;
  specpoly::Spectrahedron c(SymMatrix(a0), {SymMatrix(m1), SymMatrix(m2)});
  double angle = coef(rng) * 3.14159265358979;
  double radius = 2.0 * box + 1.0 + 2.0 * (coef(rng) + 1.0);
  Eigen::VectorXd v(2);
  v << radius * std::cos(angle), radius * std::sin(angle);
  return {std::move(c), std::move(v), Eigen::VectorXd::Zero(2)};
}

// Bounded random inequality system: a simplex frame (-x_i <= c_i and
// sum x_i <= c_0) plus a few random tangent rows, all with unit normals.
inline specpoly::HRep random_bounded_hrep(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> off(1.0, 3.0);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<int> extra_count(0, 8 - (n + 1));
  const int extra = extra_count(rng);
  const int m = n + 1 + extra;
  Eigen::MatrixXd a(m, n);
  Eigen::VectorXd b(m);
  for (int i = 0; i < n; ++i) {
    a.row(i) = -Eigen::RowVectorXd::Unit(n, i);
    b(i) = off(rng);
  }
  a.row(n).setConstant(1.0 / std::sqrt(double(n)));
  b(n) = off(rng);
  for (int r = n + 1; r < m; ++r) {
    Eigen::VectorXd normal(n);
    do {
      for (int i = 0; i < n; ++i) normal(i) = coord(rng);
    } while (normal.norm() < 1e-3);
    normal.normalize();
    a.row(r) = normal.transpose();
    b(r) = 0.5 + off(rng);
  }
  return {std::move(a), std::move(b)};
}

}  // namespace oracle
