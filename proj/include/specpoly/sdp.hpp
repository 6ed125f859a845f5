#pragma once

#include <functional>
#include <utility>

#include <Eigen/Dense>

#include "specpoly/spectra.hpp"

namespace specpoly {

// Supporting halfspace { x : normal^T x >= offset } of a spectrahedron,
// produced at a boundary point hit from an exterior vertex.
struct SupportCut {
  Eigen::VectorXd normal;          // w*, satisfies normal^T direction = 1
  double offset;                   // normal^T origin_vertex + t_star
  Eigen::VectorXd boundary_point;  // origin_vertex + t_star * direction
  double t_star;                   // distance parameter along the segment
  Eigen::VectorXd origin_vertex;   // the exterior query point v
  Eigen::VectorXd direction;       // d, points from v into the interior
};

struct P2Result {
  SupportCut cut;
  Eigen::MatrixXd dual_certificate;  // U* = alpha u u^T, psd, <A_bar(d), U*> = 1
  double dual_value;                 // -<A(v), U*>; equals t_star at optimum
};

struct P1Options {
  double mu_initial = 1.0;
  double mu_factor = 10.0;
  double gap_tol = 1e-7;           // outer stop: pencil_dim / mu <= gap_tol
  double newton_tol = 1e-9;        // inner stop on half squared decrement
  double divergence_radius = 1e8;  // iterate sup-norm beyond this: unbounded
  int max_newton_per_stage = 500;
};

struct P1Result {
  Eigen::VectorXd x;
  double value;  // w^T x
  int newton_steps;
};

// max w^T x over { x : A(x) psd } by log-det barrier path following from a
// strictly feasible start.  Accuracy: value within 1e-6 * (1 + |value|) of
// the supremum.  Throws ErrorKind::Unbounded when iterates escape the
// divergence radius and ErrorKind::InfeasibleStart when the start is not
// strictly feasible.
P1Result solve_p1(const Spectrahedron& c, const Eigen::VectorXd& w,
                  const Eigen::VectorXd& start, const P1Options& opts = {});

// First feasible point on the segment v + t d, t in [0, 1], by bisection on
// the smallest pencil eigenvalue, together with the supporting halfspace
// recovered from the kernel at the crossing.  Preconditions: v strictly
// outside (else ErrorKind::PointInside), v + d strictly inside (else
// ErrorKind::PointNotInterior).
P2Result solve_p2(const Spectrahedron& c, const Eigen::VectorXd& v,
                  const Eigen::VectorXd& d);

struct InteriorPoint {
  Eigen::VectorXd x;
  double margin;  // lambda_min(A(x)), strictly positive
};

// Strictly feasible point via the lifted program max s, A(x) - s I psd,
// started at (0, lambda_min(A(0)) - 1) and stopped early once s reaches
// stop_margin (so an unbounded lifted supremum is harmless).  Throws
// ErrorKind::NoInterior when the optimum proves the interior empty.
InteriorPoint find_interior_point(const Spectrahedron& c,
                                  double stop_margin = 1.0);

// The same lifted program run to optimality, with no emptiness judgement:
// returns (x, sup s).  Lets callers distinguish an empty set (negative
// optimum) from a degenerate one (optimum near zero).  The caller must know
// the supremum is finite.
std::pair<Eigen::VectorXd, double> phase1_optimum(const Spectrahedron& c);

}  // namespace specpoly
