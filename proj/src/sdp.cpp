#include "specpoly/sdp.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace specpoly {

namespace {

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

struct BarrierOutcome {
  Eigen::VectorXd x;
  int newton_steps = 0;
  bool stopped_early = false;
};

// Path following for max w^T x over {A(x) psd}: minimize
// f_mu(x) = -mu w^T x - logdet A(x) per stage, multiply mu between stages.
// stop_predicate (optional) is evaluated after each stage; returning true
// ends the run early with the current strictly feasible iterate.
BarrierOutcome barrier_maximize(
    const Spectrahedron& c, const Eigen::VectorXd& w,
    const Eigen::VectorXd& start, const P1Options& opts,
    const std::function<bool(const Eigen::VectorXd&)>& stop_predicate) {
  const int n = c.ambient_dim();
  const int m = c.pencil_dim();
  require(w.size() == n && start.size() == n, ErrorKind::InvalidInput,
          "objective/start dimension mismatch");
  require(min_eigenpair(c.evaluate(start)).value > 0.0,
          ErrorKind::InfeasibleStart,
          "barrier start must be strictly feasible");

  Eigen::VectorXd x = start;
  double mu = opts.mu_initial;
  BarrierOutcome out;
  if (stop_predicate && stop_predicate(x)) {
    out.x = x;
    out.stopped_early = true;
    return out;
  }

  while (true) {
    Eigen::LLT<Eigen::MatrixXd> llt(c.evaluate(x).mat());
    require(llt.info() == Eigen::Success, ErrorKind::NoConvergence,
            "barrier iterate lost strict feasibility");
    const double stage_start_norm = x.lpNorm<Eigen::Infinity>();
    bool stage_settled = false;
    for (int it = 0; it < opts.max_newton_per_stage; ++it) {
      Eigen::MatrixXd ainv =
          llt.solve(Eigen::MatrixXd::Identity(m, m));
      std::vector<Eigen::MatrixXd> s(n);
      for (int i = 0; i < n; ++i) s[i] = ainv * c.coefficient(i).mat();
      Eigen::VectorXd grad(n);
      for (int i = 0; i < n; ++i) grad(i) = -mu * w(i) - s[i].trace();
      Eigen::MatrixXd hess(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          hess(i, j) = (s[i].array() * s[j].transpose().array()).sum();
          hess(j, i) = hess(i, j);
        }
      }
      Eigen::LDLT<Eigen::MatrixXd> hfac(hess);
      Eigen::VectorXd p;
      if (hfac.info() == Eigen::Success && hfac.isPositive()) {
        p = hfac.solve(-grad);
      } else {
        Eigen::MatrixXd hreg = hess;
        hreg.diagonal().array() += 1e-12 * (1.0 + hess.trace());
        p = Eigen::LDLT<Eigen::MatrixXd>(hreg).solve(-grad);
      }
      double decr2 = std::abs(-grad.dot(p));
      if (0.5 * decr2 <= opts.newton_tol) {
        stage_settled = true;
        break;
      }

      double lambda = std::sqrt(decr2);
      double step = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
      double f_cur = -mu * w.dot(x) - log_det_from_llt(llt);
      double slope = grad.dot(p);
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        Eigen::VectorXd xn = x + step * p;
        Eigen::LLT<Eigen::MatrixXd> lltn(c.evaluate(xn).mat());
        if (lltn.info() == Eigen::Success) {
          double fn = -mu * w.dot(xn) - log_det_from_llt(lltn);
          if (fn <= f_cur + 0.25 * step * slope) {
            x = xn;
            llt = lltn;
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!accepted) {  // numerical floor for this stage
        stage_settled = true;
        break;
      }
      ++out.newton_steps;
      if (stop_predicate && stop_predicate(x)) {
        out.x = x;
        out.stopped_early = true;
        return out;
      }
      require(x.lpNorm<Eigen::Infinity>() <= opts.divergence_radius,
              ErrorKind::Unbounded,
              "barrier iterates diverged; supremum is unbounded");
    }
    // A stage that burns its whole Newton budget with the decrement still
    // large has no certified center; reporting its last iterate would be a
    // silent lie.  Steady outward drift is the signature of a stage whose
    // infimum sits at infinity.
    if (!stage_settled) {
      require(x.lpNorm<Eigen::Infinity>() <=
                  2.0 * (1.0 + stage_start_norm),
              ErrorKind::Unbounded,
              "barrier stage ran away without converging; supremum appears "
              "unbounded");
      require(false, ErrorKind::NoConvergence,
              "barrier stage exhausted its Newton budget");
    }
    if (static_cast<double>(m) / mu <= opts.gap_tol) break;
    mu *= opts.mu_factor;
  }
  out.x = x;
  return out;
}

Spectrahedron lift_margin_program(const Spectrahedron& c) {
  // Variables (x, s); pencil A(x) - s I.
  std::vector<SymMatrix> coeffs;
  coeffs.reserve(c.ambient_dim() + 1);
  for (int i = 0; i < c.ambient_dim(); ++i) coeffs.push_back(c.coefficient(i));
  coeffs.push_back(SymMatrix::identity(c.pencil_dim()).scaled(-1.0));
  return Spectrahedron(c.constant_term(), std::move(coeffs));
}

// Conjoin ||x|| <= radius as the Schur-complement block
// [[radius I, x], [x^T, radius]] appended to the pencil.
Spectrahedron intersect_ball_lmi(const Spectrahedron& c, double radius) {
  const int n = c.ambient_dim();
  const int m = c.pencil_dim();
  const int k = m + n + 1;
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(k, k);
  a0.topLeftCorner(m, m) = c.constant_term().mat();
  a0.bottomRightCorner(n + 1, n + 1) =
      radius * Eigen::MatrixXd::Identity(n + 1, n + 1);
  std::vector<SymMatrix> coeffs;
  coeffs.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd ai = Eigen::MatrixXd::Zero(k, k);
    ai.topLeftCorner(m, m) = c.coefficient(i).mat();
    ai(m + i, k - 1) = 1.0;
    ai(k - 1, m + i) = 1.0;
    coeffs.emplace_back(std::move(ai));
  }
  return Spectrahedron(SymMatrix(std::move(a0)), std::move(coeffs));
}

}  // namespace

P1Result solve_p1(const Spectrahedron& c, const Eigen::VectorXd& w,
                  const Eigen::VectorXd& start, const P1Options& opts) {
  BarrierOutcome out = barrier_maximize(c, w, start, opts, nullptr);
  return P1Result{out.x, w.dot(out.x), out.newton_steps};
}

P2Result solve_p2(const Spectrahedron& c, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& d) {
  const int n = c.ambient_dim();
  require(v.size() == n && d.size() == n, ErrorKind::InvalidInput,
          "query point/direction dimension mismatch");
  SymMatrix av = c.evaluate(v);
  require(min_eigenpair(av).value < -psd_tolerance(av),
          ErrorKind::PointInside,
          "boundary search requires a strictly exterior start");
  require(min_eigenpair(c.evaluate(v + d)).value > 0.0,
          ErrorKind::PointNotInterior,
          "boundary search requires a strictly interior segment end");

  // lambda_min(A(v + t d)) changes sign on [0, 1]; bisect to 1e-10.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    SymMatrix amid = c.evaluate(v + mid * d);
    if (min_eigenpair(amid).value >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double t_star = hi;  // feasible side of the final bracket
  Eigen::VectorXd x_star = v + t_star * d;

  // Dual certificate from the pencil kernel at the crossing.  With a simple
  // smallest eigenvalue the kernel vector is unique; under numerical
  // multiplicity pick the kernel direction along which the pencil grows
  // fastest when moving into the interior, so the normalization <A_bar(d),
  // U*> = 1 stays well posed.
  SymMatrix a_star = c.evaluate(x_star);
  EigenDecomposition dec = eigen_sym(a_star);
  const double kernel_tol = 1e-6 * (1.0 + a_star.frobenius_norm());
  int kernel_dim = 0;
  while (kernel_dim < dec.values.size() &&
         dec.values(kernel_dim) < kernel_tol) {
    ++kernel_dim;
  }
  kernel_dim = std::max(kernel_dim, 1);
  SymMatrix abar_d = c.evaluate_linear(d);

  Eigen::VectorXd u;
  double growth;
  if (kernel_dim == 1) {
    u = dec.vectors.col(0);
    growth = u.dot(abar_d.mat() * u);
  } else {
    Eigen::MatrixXd q = dec.vectors.leftCols(kernel_dim);
    EigenDecomposition sub =
        eigen_sym(SymMatrix(q.transpose() * abar_d.mat() * q));
    growth = sub.values(kernel_dim - 1);
    u = q * sub.vectors.col(kernel_dim - 1);
    u.normalize();
  }
  require(growth > 1e-12 * (1.0 + abar_d.frobenius_norm()),
          ErrorKind::NoConvergence,
          "pencil does not grow along the segment at the boundary point");

  const double alpha = 1.0 / growth;
  Eigen::VectorXd normal(n);
  for (int i = 0; i < n; ++i) {
    normal(i) = alpha * u.dot(c.coefficient(i).mat() * u);
  }

  P2Result out;
  out.cut.normal = normal;
  out.cut.t_star = t_star;
  out.cut.offset = normal.dot(v) + t_star;
  out.cut.boundary_point = std::move(x_star);
  out.cut.origin_vertex = v;
  out.cut.direction = d;
  out.dual_certificate = alpha * (u * u.transpose());
  out.dual_value = -alpha * u.dot(av.mat() * u);
  return out;
}

InteriorPoint find_interior_point(const Spectrahedron& c, double stop_margin) {
  EigenPair at_zero = min_eigenpair(c.constant_term());
  if (at_zero.value >= stop_margin) {
    return InteriorPoint{Eigen::VectorXd::Zero(c.ambient_dim()),
                         at_zero.value};
  }
  const int n = c.ambient_dim();
  Spectrahedron lifted = lift_margin_program(c);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);
  w(n) = 1.0;
  Eigen::VectorXd start = Eigen::VectorXd::Zero(n + 1);
  start(n) = at_zero.value - 1.0;
  auto early = [&](const Eigen::VectorXd& z) {
    if (z(n) >= stop_margin) return true;
    // The margin supremum may be approached only along a path running to
    // infinity; an iterate that is strictly feasible beyond tolerance
    // already serves as a Slater point, so grab it instead of chasing the
    // supremum outward.
    return z.head(n).lpNorm<Eigen::Infinity>() > 1e3 &&
           z(n) > psd_tolerance(c.evaluate(z.head(n)));
  };
  // When the feasible set is unbounded, barrier stages for the lifted
  // program can lack minimizers (log-det grows forever along recession
  // directions while s stalls), so bound the domain by a large ball and
  // enlarge it only if the optimum is pressed against the wall while still
  // infeasible.
  const double scale = 1.0 + start.norm();
  for (double radius = 1e4 * scale; radius <= 1e6 * scale; radius *= 100.0) {
    Spectrahedron bounded = intersect_ball_lmi(lifted, radius);
    P1Options opts;
    opts.divergence_radius = 10.0 * radius;
    BarrierOutcome out = barrier_maximize(bounded, w, start, opts, early);
    Eigen::VectorXd x = out.x.head(n);
    SymMatrix ax = c.evaluate(x);
    double margin = min_eigenpair(ax).value;
    if ((out.stopped_early || out.x(n) > psd_tolerance(ax)) && margin > 0.0) {
      return InteriorPoint{std::move(x), margin};
    }
    if (out.x.norm() < 0.9 * radius) break;  // genuinely optimal, not clipped
  }
  require(false, ErrorKind::NoInterior,
          "Slater search converged without a strictly feasible point");
  return InteriorPoint{};  // unreachable
}

std::pair<Eigen::VectorXd, double> phase1_optimum(const Spectrahedron& c) {
  const int n = c.ambient_dim();
  Spectrahedron lifted = lift_margin_program(c);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);
  w(n) = 1.0;
  Eigen::VectorXd start = Eigen::VectorXd::Zero(n + 1);
  start(n) = min_eigenpair(c.constant_term()).value - 1.0;
  BarrierOutcome out = barrier_maximize(lifted, w, start, P1Options{}, nullptr);
  return {out.x.head(n), out.x(n)};
}

}  // namespace specpoly
