#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "specpoly/polyc.hpp"
#include "specpoly/spectra.hpp"

namespace specpoly {

struct RunStats {
  long sdp_solves = 0;      // barrier runs + boundary bisections
  long vertices_final = 0;  // vertex (or generator) count of the output
  double wall_seconds = 0.0;
};

// Observer payload, fired once per refinement iteration before cutting.
struct CutIteration {
  int index;
  double kappa;  // largest certified vertex-to-set distance bound
  const PolyBundle& bundle;
};

struct ApproxParams {
  double eps = 0.1;
  double delta = 0.1;
  int max_iterations = 10000;
  unsigned seed = 12345;  // sampling validators only; the core is deterministic
  std::function<void(const CutIteration&)> observer;
};

struct ApproxCertificate {
  // Certified upper bound on dist(v, C) for each output vertex, aligned
  // with the vertex list (0 for vertices verified inside the set).
  std::vector<double> vertex_bounds;
  // Certified upper bound on the truncated Hausdorff distance between the
  // output recession cone and the true one (0 when both are trivial).
  double cone_delta = 0.0;
  // Sampled members of the set verified inside the output polyhedron.
  long containment_samples = 0;
  RunStats stats;
};

struct ApproxResult {
  VRep polyhedron;
  ApproxCertificate certificate;
};

// Outer refinement of a compact spectrahedron: seed with support halfspaces
// along -(1,...,1) and the coordinate directions, then repeatedly cut the
// vertex with the largest certified distance bound until every bound is at
// most eps.  Throws Unbounded for unbounded input, NoInterior when no Slater
// point exists, IterationCap past params.max_iterations.
ApproxResult cutting_scheme(const Spectrahedron& c, double eps,
                            const ApproxParams& params = {});

// Outer approximation of an unbounded, line-free spectrahedron with vertex
// excess at most params.eps and recession-cone deviation at most
// params.delta: approximate the recession cone on a hyperplane slice, fatten
// and lift to a cone certificate K, truncate the set along the polar
// direction, refine the truncation, and add K back.  Throws CompactInput
// when the recession cone is trivial, NotPointed when it contains a line,
// NoInterior / DegenerateDirection as detected.
ApproxResult eda_approximation(const Spectrahedron& c,
                               const ApproxParams& params = {});

struct ConeApproxResult {
  std::vector<Eigen::VectorXd> generators;
  double cone_delta = 0.0;     // constructive certificate, <= requested delta
  double sampled_lower = 0.0;  // certified sampled lower bound
  RunStats stats;
};

// Recession-cone-only pipeline for spectrahedral cones (zero constant
// term); returns the generator list of the polyhedral outer cone.
ConeApproxResult cone_approximation(const Spectrahedron& c, double delta,
                                    const ApproxParams& params = {});

}  // namespace specpoly
