#include "specpoly/qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace specpoly {

namespace {

struct Workspace {
  Eigen::MatrixXd b;   // columns: vertices then rays
  Eigen::MatrixXd q;   // b^T b + tiny relative ridge
  Eigen::VectorXd c;   // b^T p
  int nv = 0;
  int total = 0;
};

// Solve the equality-constrained subproblem restricted to the free set:
//   min 1/2 z^T Q z - c^T z  over free coordinates,
//   sum of free lambda = 1 when vertices participate.
// Returns the candidate values for the free coordinates and the multiplier.
bool solve_subproblem(const Workspace& w, const std::vector<int>& free,
                      Eigen::VectorXd* z_free, double* nu) {
  const int nf = static_cast<int>(free.size());
  Eigen::MatrixXd qff(nf, nf);
  Eigen::VectorXd cf(nf);
  Eigen::VectorXd ef(nf);
  for (int a = 0; a < nf; ++a) {
    cf(a) = w.c(free[a]);
    ef(a) = free[a] < w.nv ? 1.0 : 0.0;
    for (int b2 = 0; b2 < nf; ++b2) qff(a, b2) = w.q(free[a], free[b2]);
  }
  if (w.nv == 0) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(qff);
    if (ldlt.info() == Eigen::Success) {
      *z_free = ldlt.solve(cf);
      *nu = 0.0;
      return true;
    }
    // Rank-deficient Gram (collinear rays): any least-squares solution
    // reproduces the same projected point, so take the minimum-norm one.
    *z_free = qff.completeOrthogonalDecomposition().solve(cf);
    *nu = 0.0;
    return true;
  }
  // KKT system [Q_FF  -e_F; e_F^T  0] [z; nu] = [c_F; 1], solved with the
  // stationarity rows divided by the dominant Gram scale (and nu
  // substituted accordingly): rank-revealing pivot thresholds are relative
  // to the largest entry, and an unbalanced system would see the O(1)
  // combination row as numerical noise next to O(|b|^2) Gram entries.
  const double g = std::max(qff.diagonal().maxCoeff(), 1e-300);
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nf + 1, nf + 1);
  kkt.topLeftCorner(nf, nf) = qff / g;
  kkt.topRightCorner(nf, 1) = -ef;
  kkt.bottomLeftCorner(1, nf) = ef.transpose();
  Eigen::VectorXd rhs(nf + 1);
  rhs.head(nf) = cf / g;
  rhs(nf) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  Eigen::VectorXd sol;
  if (lu.isInvertible()) {
    sol = lu.solve(rhs);
  } else {
    // Affinely dependent generators leave a null direction that the ridge
    // may not lift above the pivot threshold; the system stays consistent
    // (convex objective), so the minimum-norm solution is a valid optimum.
    sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    double scale = 1.0 + rhs.norm() + kkt.cwiseAbs().maxCoeff() * sol.norm();
    if ((kkt * sol - rhs).norm() > 1e-10 * scale) return false;
  }
  *z_free = sol.head(nf);
  *nu = g * sol(nf);
  return true;
}

}  // namespace

ProjectionResult project_point(const Eigen::VectorXd& p,
                               const std::vector<Eigen::VectorXd>& vertices,
                               const std::vector<Eigen::VectorXd>& rays,
                               double kkt_tol) {
  const int nv = static_cast<int>(vertices.size());
  const int nr = static_cast<int>(rays.size());
  require(nv + nr > 0, ErrorKind::InvalidInput,
          "projection target needs at least one generator");
  const int dim = static_cast<int>(p.size());

  Workspace w;
  w.nv = nv;
  w.total = nv + nr;
  w.b.resize(dim, w.total);
  // With vertices present the combination constraint sum(lambda) = 1 absorbs
  // a common translation, so recentering the vertex block on the query point
  // strips the dominant rank-one part of the Gram matrix (far-away queries
  // would otherwise drown the geometry in a huge shared offset).  Rays are
  // anchored at the origin and must stay put.
  const bool recenter = nv > 0;
  const Eigen::VectorXd p_local =
      recenter ? Eigen::VectorXd::Zero(dim) : p;
  for (int i = 0; i < nv; ++i) {
    require(vertices[i].size() == dim, ErrorKind::InvalidInput,
            "vertex dimension mismatch in projection");
    w.b.col(i) = vertices[i] - p;
  }
  for (int j = 0; j < nr; ++j) {
    require(rays[j].size() == dim, ErrorKind::InvalidInput,
            "ray dimension mismatch in projection");
    w.b.col(nv + j) = rays[j];
  }
  Eigen::MatrixXd q_exact = w.b.transpose() * w.b;
  w.q = q_exact;
  // Relative ridge: keeps duplicate columns solvable without biasing large
  // weights (an absolute ridge scaled by max q would drag far projections).
  w.q.diagonal().array() += 1e-14 * w.q.diagonal().array().abs() + 1e-30;
  w.c = w.b.transpose() * p_local;

  // Dual feasibility is tested per column at the gradient's natural scale
  // ||b_i|| * (1 + ||p||), so the implied primal error stays relative to the
  // query magnitude rather than to its square.
  Eigen::VectorXd col_scale(w.total);
  for (int i = 0; i < w.total; ++i) {
    col_scale(i) = std::max(w.b.col(i).norm(), 1.0) * (1.0 + p_local.norm());
  }
  const int cap = 10 * w.total;

  Eigen::VectorXd z = Eigen::VectorXd::Zero(w.total);
  std::vector<bool> is_free(w.total, false);
  if (nv > 0) {
    z(0) = 1.0;
    is_free[0] = true;
  }

  double nu = 0.0;
  int iterations = 0;
  bool converged = false;
  // Coordinates pinned by a zero-length partial step: releasing one again
  // before anything else moves would repeat the same degenerate cycle, so
  // bar it until the iterate makes measurable progress.
  std::vector<bool> barred(w.total, false);
  while (iterations < cap) {
    ++iterations;
    std::vector<int> free;
    for (int i = 0; i < w.total; ++i) {
      if (is_free[i]) free.push_back(i);
    }

    bool full_step = true;
    Eigen::VectorXd z_free;
    if (!free.empty()) {
      require(solve_subproblem(w, free, &z_free, &nu),
              ErrorKind::NoConvergence,
              "projection subproblem became singular");
      double z_scale = 1.0 + z_free.cwiseAbs().maxCoeff();
      double min_val = z_free.minCoeff();
      if (min_val >= -1e-12 * z_scale) {
        for (size_t a = 0; a < free.size(); ++a) {
          z(free[a]) = std::max(z_free(a), 0.0);
        }
      } else {
        // Partial step to the nearest bound; pin the blocking coordinate.
        full_step = false;
        double alpha = 1.0;
        int blocker = -1;
        for (size_t a = 0; a < free.size(); ++a) {
          if (z_free(a) < -1e-12 * z_scale) {
            double za = z(free[a]);
            double step = za / (za - z_free(a));
            if (step < alpha - 1e-15) {
              alpha = step;
              blocker = free[a];
            }
          }
        }
        for (size_t a = 0; a < free.size(); ++a) {
          double updated = z(free[a]) + alpha * (z_free(a) - z(free[a]));
          z(free[a]) = std::max(updated, 0.0);
        }
        if (alpha > 1e-14) {
          std::fill(barred.begin(), barred.end(), false);
        } else if (blocker >= 0) {
          barred[blocker] = true;
        }
        if (blocker >= 0) {
          z(blocker) = 0.0;
          is_free[blocker] = false;
        }
      }
    }

    if (full_step) {
      // Optimal on the current face; check multipliers of pinned coordinates.
      Eigen::VectorXd grad = w.q * z - w.c;
      if (nv > 0) {
        // Stationarity gives nu = grad_i on every free vertex coordinate.
        double acc = 0.0;
        int cnt = 0;
        for (int i = 0; i < nv; ++i) {
          if (is_free[i]) {
            acc += grad(i);
            ++cnt;
          }
        }
        if (cnt > 0) nu = acc / cnt;
      }
      double worst = 0.0;
      int release = -1;
      for (int i = 0; i < w.total; ++i) {
        if (is_free[i] || barred[i]) continue;
        double sigma = (grad(i) - (i < nv ? nu : 0.0)) / col_scale(i);
        if (sigma < worst - 1e-15) {
          worst = sigma;
          release = i;
        }
      }
      if (release < 0 || worst >= -kkt_tol) {
        converged = true;
        break;
      }
      is_free[release] = true;
    }
  }
  require(converged, ErrorKind::NoConvergence,
          "projection active-set method hit its iteration cap");

  // Ridge-free re-solve on the settled face removes the regularization bias
  // from the reported weights; keep the iterate if the exact face solution
  // escapes the nonnegativity bounds.
  {
    std::vector<int> free;
    for (int i = 0; i < w.total; ++i) {
      if (is_free[i]) free.push_back(i);
    }
    if (!free.empty()) {
      Workspace exact = w;
      exact.q = q_exact;
      Eigen::VectorXd z_free;
      double nu_exact = 0.0;
      if (solve_subproblem(exact, free, &z_free, &nu_exact) &&
          z_free.minCoeff() >= -1e-9 * (1.0 + z_free.cwiseAbs().maxCoeff())) {
        for (size_t a = 0; a < free.size(); ++a) {
          z(free[a]) = std::max(z_free(a), 0.0);
        }
        nu = nu_exact;
      }
    }
  }

  ProjectionResult out;
  const Eigen::VectorXd combo = w.b * z;
  out.point = recenter ? Eigen::VectorXd(p + combo) : combo;
  out.distance = (combo - p_local).norm();
  out.vertex_weights = z.head(nv);
  out.ray_weights = z.tail(nr);
  out.iterations = iterations;

  // Karush-Kuhn-Tucker residual for diagnostics: stationarity on the free
  // set, dual feasibility on the pinned set, primal feasibility.
  Eigen::VectorXd grad = w.q * z - w.c;
  double res = 0.0;
  for (int i = 0; i < w.total; ++i) {
    double sigma = grad(i) - (i < nv && nv > 0 ? nu : 0.0);
    if (is_free[i]) {
      res = std::max(res, std::abs(sigma));
    } else {
      res = std::max(res, std::max(0.0, -sigma));
    }
  }
  if (nv > 0) res = std::max(res, std::abs(z.head(nv).sum() - 1.0));
  res = std::max(res, std::max(0.0, -z.minCoeff()));
  out.kkt_residual = res;
  return out;
}

}  // namespace specpoly
