#include "specpoly/approx.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <utility>

#include "specpoly/errors.hpp"
#include "specpoly/metrics.hpp"
#include "specpoly/qp.hpp"
#include "specpoly/sdp.hpp"

namespace specpoly {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// The barrier stops at a bounded duality gap, so a computed support value can
// undershoot the true supremum; halfspaces built from it are padded by the
// gap bound to keep the outer containment honest.
double support_slack(double value) {
  return 2.0 * P1Options{}.gap_tol * (1.0 + std::abs(value));
}

std::vector<double> vertex_key(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

bool lex_less_vec(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < y(i)) return true;
    if (x(i) > y(i)) return false;
  }
  return false;
}

struct VertexInfo {
  double bound = 0.0;
  std::optional<SupportCut> cut;
};

struct CutCoreResult {
  PolyBundle bundle;
  std::vector<double> bounds;  // aligned with bundle.vertices()
  std::map<std::vector<double>, VertexInfo> table;
  std::vector<Eigen::VectorXd> boundary_points;  // members of C collected
  Eigen::VectorXd center;
  int iterations = 0;
};

// Refinement loop shared by the compact scheme and the truncation stage of
// the unbounded driver.  Evaluates every vertex (cached across iterations),
// stops once the largest certified bound is at most eps, otherwise cuts the
// worst vertex with its supporting halfspace.
CutCoreResult run_cutting(const Spectrahedron& c, double eps,
                          const ApproxParams& params,
                          std::optional<PolyBundle> seed_bundle,
                          std::optional<Eigen::VectorXd> seed_center,
                          long* solves) {
  const int n = c.ambient_dim();

  Eigen::VectorXd center;
  double center_margin = 0.0;
  if (seed_center) {
    center = *seed_center;
  } else {
    InteriorPoint interior = find_interior_point(c);
    center = interior.x;
    center_margin = interior.margin;
    ++*solves;
  }

  std::vector<Eigen::VectorXd> boundary_points;
  std::optional<PolyBundle> bundle = std::move(seed_bundle);
  if (!bundle) {
    // Seed supports: w in {-(1,...,1), e_1, ..., e_n} bound the set iff it
    // is compact; any unbounded direction surfaces as an Unbounded throw.
    std::vector<Eigen::VectorXd> dirs;
    dirs.push_back(-Eigen::VectorXd::Ones(n));
    for (int i = 0; i < n; ++i) dirs.push_back(Eigen::VectorXd::Unit(n, i));
    HRep h;
    h.a.resize(dirs.size(), n);
    h.b.resize(dirs.size());
    std::vector<Eigen::VectorXd> supports;
    for (size_t k = 0; k < dirs.size(); ++k) {
      P1Result p1 = solve_p1(c, dirs[k], center);
      ++*solves;
      h.a.row(k) = dirs[k].transpose();
      h.b(k) = p1.value + support_slack(p1.value);
      supports.push_back(p1.x);
      boundary_points.push_back(p1.x);
    }
    bundle = PolyBundle::from_bounded_hrep(h);
    // The support-point centroid is the refinement anchor; blend it toward
    // the Slater point until its interior margin is commensurate, since an
    // anchor too close to the boundary degrades every later cut.
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (const Eigen::VectorXd& s : supports) centroid += s;
    centroid /= static_cast<double>(supports.size());
    for (int tries = 0; tries < 60; ++tries) {
      if (min_eigenpair(c.evaluate(centroid)).value >= 0.05 * center_margin) {
        break;
      }
      centroid = 0.5 * (centroid + center);
    }
    if (min_eigenpair(c.evaluate(centroid)).value >= 0.05 * center_margin) {
      center = centroid;
    }
  }

  std::map<std::vector<double>, VertexInfo> table;
  std::vector<double> bounds;
  int iteration = 0;
  while (true) {
    const std::vector<Eigen::VectorXd>& verts = bundle->vertices();
    bounds.assign(verts.size(), 0.0);
    double kappa = 0.0;
    int worst = -1;
    for (size_t i = 0; i < verts.size(); ++i) {
      auto key = vertex_key(verts[i]);
      auto it = table.find(key);
      if (it == table.end()) {
        VertexInfo info;
        Membership mem = c.contains(verts[i]);
        if (!mem.inside) {
          P2Result p2 = solve_p2(c, verts[i], center - verts[i]);
          ++*solves;
          info.bound = p2.cut.t_star * (center - verts[i]).norm();
          info.cut = p2.cut;
          boundary_points.push_back(p2.cut.boundary_point);
        }
        it = table.emplace(std::move(key), std::move(info)).first;
      }
      bounds[i] = it->second.bound;
      if (bounds[i] > kappa ||
          (worst >= 0 && bounds[i] == kappa &&
           lex_less_vec(verts[i], verts[worst]))) {
        kappa = bounds[i];
        worst = static_cast<int>(i);
      }
    }
    if (params.observer) {
      params.observer(CutIteration{iteration, kappa, *bundle});
    }
    if (kappa <= eps) break;
    require(iteration < params.max_iterations, ErrorKind::IterationCap,
            "refinement loop exceeded its iteration budget");
    const SupportCut& cut = *table.at(vertex_key(verts[worst])).cut;
    // The supporting halfspace is normal^T x >= offset; flip for insertion.
    bundle->insert_halfspace(-cut.normal, -cut.offset);
    ++iteration;
  }

  CutCoreResult out{std::move(*bundle), std::move(bounds), std::move(table),
                    std::move(boundary_points), std::move(center), iteration};
  return out;
}

// Deterministic sampler of verified set members: starts from collected
// boundary/interior points, grows the pool with convex combinations, box
// rejection, and recession pushes, then reports how many of `count` members
// land inside the polyhedron (within tol).
long sample_containment(const Spectrahedron& c, const VRep& p,
                        const std::vector<Eigen::VectorXd>& pool_seed,
                        const std::vector<Eigen::VectorXd>& recession_dirs,
                        long count, unsigned seed, double tol,
                        const std::optional<HRep>& hrep) {
  const int n = c.ambient_dim();
  std::vector<Eigen::VectorXd> pool;
  for (const Eigen::VectorXd& x : pool_seed) {
    if (min_eigenpair(c.evaluate(x)).value >= 0.0) pool.push_back(x);
  }
  if (pool.empty()) return 0;

  Eigen::VectorXd lo = pool.front(), hi = pool.front();
  for (const Eigen::VectorXd& x : pool) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  Eigen::VectorXd mid = 0.5 * (lo + hi);
  Eigen::VectorXd half = 0.65 * (hi - lo) + Eigen::VectorXd::Constant(n, 1e-3);
  double span = (hi - lo).norm() + 1.0;

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_mode(0, 2);
  long members = 0, inside = 0, attempts = 0;
  const long max_attempts = 400 * count;
  while (members < count && attempts < max_attempts) {
    ++attempts;
    Eigen::VectorXd x(n);
    int mode = pick_mode(rng);
    if (mode == 0 && pool.size() >= 2) {
      size_t a = rng() % pool.size();
      size_t b = rng() % pool.size();
      x = pool[a] + unit(rng) * (pool[b] - pool[a]);
    } else if (mode == 2 && !recession_dirs.empty()) {
      size_t a = rng() % pool.size();
      size_t r = rng() % recession_dirs.size();
      x = pool[a] + unit(rng) * span * recession_dirs[r];
    } else {
      for (int i = 0; i < n; ++i) {
        x(i) = mid(i) + (2.0 * unit(rng) - 1.0) * half(i);
      }
    }
    if (min_eigenpair(c.evaluate(x)).value < 0.0) continue;
    ++members;
    if (pool.size() < 4096) pool.push_back(x);
    const double slack = tol * (1.0 + x.norm());  // relative to sample scale
    bool ok;
    if (hrep) {
      ok = (hrep->a * x - hrep->b).maxCoeff() <= slack;
    } else {
      ok = project_point(x, p.vertices, p.directions, 1e-10).distance <= slack;
    }
    if (ok) ++inside;
  }
  return inside;
}

struct SliceApprox {
  std::vector<Eigen::VectorXd> chart_vertices;   // conv(...) covers the slice
  std::vector<Eigen::VectorXd> feasible_points;  // certified slice members
  double kappa = 0.0;  // certified excess of the vertices over the slice
};

// One-dimensional slice of the recession cone: the smallest pencil
// eigenvalue g is concave along the line, so the slice is the interval
// {g >= 0}.  Locate the peak, certify an enclosing interval by outward
// bisection to strictly infeasible endpoints, and bound each endpoint's
// distance to the slice by the nearest feasible sample (or, when no sample
// is certified feasible, by the interval width).
SliceApprox approximate_slice_1d(const Spectrahedron& sliced, long* solves) {
  std::vector<double> feasible;
  auto g = [&](double y) {
    Eigen::VectorXd v(1);
    v(0) = y;
    double value = min_eigenpair(sliced.evaluate(v)).value;
    if (value >= 0.0) feasible.push_back(y);
    return value;
  };

  // Bracket the concave maximum, then ternary-search it.
  double a = -1.0, b = 1.0;
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    double ga = g(a), gm = g(m), gb = g(b);
    if (gm >= ga && gm >= gb) break;
    double width = b - a;
    if (ga > gb) {
      a -= width;
    } else {
      b += width;
    }
    require(std::max(std::abs(a), std::abs(b)) < 1e9, ErrorKind::NotPointed,
            "recession slice is unbounded; the cone contains a line");
  }
  for (int it = 0; it < 300; ++it) {
    double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (g(m1) < g(m2)) {
      a = m1;
    } else {
      b = m2;
    }
    if (b - a < 1e-13 * (1.0 + std::abs(a) + std::abs(b))) break;
  }
  double peak = 0.5 * (a + b);
  double s_star = g(peak);
  ++*solves;  // the peak search plays the role of one feasibility solve

  Eigen::VectorXd vpeak(1);
  vpeak(0) = peak;
  const double tau = 1e-6 * (1.0 + sliced.evaluate(vpeak).frobenius_norm());
  require(s_star >= -tau, ErrorKind::CompactInput,
          "recession cone is trivial: the set is compact, use the compact "
          "refinement scheme");

  // Outward from the peak: double the step until g is negative, then bisect
  // the sign change.  The returned offset is strictly infeasible, so the
  // slice ends before it on that side.
  const double scale = 1.0 + std::abs(peak);
  auto outer_end = [&](double dir) {
    double lo = 0.0, hi = 1e-9 * scale;
    while (g(peak + dir * hi) >= 0.0) {
      lo = hi;
      hi *= 2.0;
      require(hi < 1e9 * scale, ErrorKind::NotPointed,
              "recession slice is unbounded; the cone contains a line");
    }
    while (hi - lo > 1e-10 * scale) {
      double mid = 0.5 * (lo + hi);
      if (g(peak + dir * mid) >= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return peak + dir * hi;
  };
  double right = outer_end(1.0);
  double left = outer_end(-1.0);
  *solves += 2;

  auto endpoint_bound = [&](double v) {
    if (feasible.empty()) return right - left;
    double best = std::numeric_limits<double>::infinity();
    for (double f : feasible) best = std::min(best, std::abs(v - f));
    return best;
  };

  SliceApprox out;
  Eigen::VectorXd vl(1), vr(1);
  vl(0) = left;
  vr(0) = right;
  out.chart_vertices = {vl, vr};
  out.kappa = std::max(endpoint_bound(left), endpoint_bound(right));
  if (!feasible.empty()) {
    auto [lo_it, hi_it] = std::minmax_element(feasible.begin(), feasible.end());
    for (double f : {*lo_it, *hi_it}) {
      Eigen::VectorXd vf(1);
      vf(0) = f;
      out.feasible_points.push_back(vf);
    }
  }
  return out;
}

struct ConeBuild {
  std::vector<Eigen::VectorXd> generators;
  double cone_delta = 0.0;
  std::vector<Eigen::VectorXd> recession_samples;  // verified members of recc C
};

// Recession-cone certificate shared by the unbounded driver and the cone
// pipeline: cover the slice M = recc C ∩ {w^T x = -(1+delta)} with a
// polytope of vertex excess at most delta/2, fatten by delta/2 in the chart
// so M lands in the interior, lift, and take the conic hull.  The truncated
// Hausdorff deviation of the resulting cone is at most the Hausdorff
// deviation of the fattened cover, i.e. slice excess + delta/2.
ConeBuild build_cone_certificate(const Spectrahedron& c,
                                 const ApproxParams& params, long* solves) {
  const double delta = params.delta;
  Eigen::VectorXd w = polar_interior_direction(c);
  Spectrahedron recc = c.recession();
  SliceChart chart = SliceChart::hyperplane(w, -(1.0 + delta));
  Spectrahedron sliced = restrict_to_slice(recc, chart);

  SliceApprox slice;
  if (c.ambient_dim() == 2) {
    slice = approximate_slice_1d(sliced, solves);
  } else {
    auto [x_slice, s_star] = phase1_optimum(sliced);
    ++*solves;
    const double tau =
        1e-6 * (1.0 + sliced.evaluate(x_slice).frobenius_norm());
    require(s_star >= -tau, ErrorKind::CompactInput,
            "recession cone is trivial: the set is compact, use the compact "
            "refinement scheme");
    require(s_star > tau, ErrorKind::NoInterior,
            "recession slice has empty interior; degenerate recession cones "
            "need a lower-dimensional chart");
    ApproxParams slice_params = params;
    slice_params.observer = nullptr;
    std::optional<Eigen::VectorXd> start;
    if (min_eigenpair(sliced.evaluate(x_slice)).value > 1e-10) {
      start = x_slice;
    }
    std::optional<CutCoreResult> core;
    try {
      core = run_cutting(sliced, delta / 2.0, slice_params, std::nullopt,
                         start, solves);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Unbounded) {
        fail(ErrorKind::NotPointed,
             "recession slice is unbounded; the cone contains a line");
      }
      throw;
    }
    slice.chart_vertices = core->bundle.vertices();
    slice.kappa = 0.0;
    for (double b : core->bounds) slice.kappa = std::max(slice.kappa, b);
    slice.feasible_points = std::move(core->boundary_points);
    slice.feasible_points.push_back(core->center);
  }
  require(slice.kappa <= delta / 2.0, ErrorKind::NoConvergence,
          "slice cover exceeded its excess budget");

  VRep mbar;
  mbar.dim = chart.slice_dim();
  mbar.vertices = slice.chart_vertices;
  VRep fat = minkowski_l1(mbar, delta / 2.0);

  ConeBuild out;
  out.cone_delta = slice.kappa + delta / 2.0;
  std::vector<Eigen::VectorXd> lifted;
  for (const Eigen::VectorXd& y : fat.vertices) lifted.push_back(chart.lift(y));
  out.generators = conical_hull(lifted);

  // Verified recession members for the sampling validator.
  for (const Eigen::VectorXd& y : slice.feasible_points) {
    Eigen::VectorXd d = chart.lift(y);
    if (min_eigenpair(recc.evaluate(d)).value >= 0.0) {
      out.recession_samples.push_back(d / d.norm());
    }
  }
  return out;
}

void validate_params(const ApproxParams& params, bool needs_delta) {
  require(params.eps > 0.0, ErrorKind::InvalidInput,
          "eps must be strictly positive");
  if (needs_delta) {
    require(params.delta > 0.0 && params.delta <= 1.0, ErrorKind::InvalidInput,
            "delta must lie in (0, 1]");
  }
  require(params.max_iterations >= 1, ErrorKind::InvalidInput,
          "iteration budget must be positive");
}

}  // namespace

ApproxResult cutting_scheme(const Spectrahedron& c, double eps,
                            const ApproxParams& params) {
  ApproxParams p = params;
  p.eps = eps;
  validate_params(p, false);
  auto t0 = Clock::now();
  long solves = 0;
  CutCoreResult core =
      run_cutting(c, eps, p, std::nullopt, std::nullopt, &solves);

  ApproxResult out;
  out.polyhedron = core.bundle.vrep();
  out.certificate.vertex_bounds = core.bounds;
  out.certificate.cone_delta = 0.0;  // compact set, trivial recession cones
  std::vector<Eigen::VectorXd> pool = core.boundary_points;
  pool.push_back(core.center);
  out.certificate.containment_samples = sample_containment(
      c, out.polyhedron, pool, {}, 1000, p.seed, 1e-6, core.bundle.hrep());
  out.certificate.stats.sdp_solves = solves;
  out.certificate.stats.vertices_final =
      static_cast<long>(out.polyhedron.vertices.size());
  out.certificate.stats.wall_seconds = seconds_since(t0);
  return out;
}

ApproxResult eda_approximation(const Spectrahedron& c,
                               const ApproxParams& params) {
  validate_params(params, true);
  require(c.ambient_dim() >= 2, ErrorKind::InvalidInput,
          "the unbounded driver needs ambient dimension >= 2");
  auto t0 = Clock::now();
  long solves = 0;

  ConeBuild cone;
  try {
    cone = build_cone_certificate(c, params, &solves);
  } catch (const Error& e) {
    // All-zero coefficient traces force every recession direction's pencil
    // to be traceless psd, hence zero: a line-free input is then compact.
    if (e.kind() == ErrorKind::DegenerateDirection) {
      throw Error(ErrorKind::CompactInput,
                  "traceless pencil directions make a line-free input "
                  "compact");
    }
    throw;
  }
  Eigen::VectorXd w = polar_interior_direction(c);
  HRep facets = cone_facets(cone.generators);

  InteriorPoint slater = find_interior_point(c);
  ++solves;

  // Support maximization along every facet normal of the cone certificate;
  // an unbounded support proves the certificate missed a recession
  // direction, which only happens when the true cone is not pointed.
  std::vector<Eigen::VectorXd> supports;
  std::vector<double> support_values;
  double truncation = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < facets.a.rows(); ++r) {
    try {
      P1Result p1 = solve_p1(c, facets.a.row(r).transpose(), slater.x);
      supports.push_back(p1.x);
      support_values.push_back(p1.value);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Unbounded) {
        fail(ErrorKind::NotPointed,
             "support maximization escaped the cone certificate; the "
             "recession cone is not pointed");
      }
      throw;
    }
    ++solves;
    truncation = std::min(truncation, w.dot(supports.back()));
  }
  const double beta = truncation - params.eps;

  // Seed polyhedron: the facet supports plus the truncation halfspace.
  const int n = c.ambient_dim();
  HRep seed;
  seed.a.resize(facets.a.rows() + 1, n);
  seed.b.resize(facets.a.rows() + 1);
  for (Eigen::Index r = 0; r < facets.a.rows(); ++r) {
    seed.a.row(r) = facets.a.row(r);
    seed.b(r) = support_values[r] + support_slack(support_values[r]);
  }
  seed.a.row(facets.a.rows()) = -w.transpose();
  seed.b(facets.a.rows()) = -beta;
  PolyBundle seed_bundle = PolyBundle::from_bounded_hrep(seed);

  Spectrahedron truncated = intersect_halfspace_lmi(c, w, beta);
  // The refinement anchor must be deep inside the truncated set: a
  // boundary-hugging anchor makes every segment crossing land next to it,
  // inflating the vertex bounds to the full ray length and reducing each cut
  // to a sliver.  Blend the support centroid (geometrically central) toward
  // the phase-I point until its margin is commensurate with a true interior
  // margin.
  InteriorPoint deep = find_interior_point(truncated);
  ++solves;
  Eigen::VectorXd anchor = Eigen::VectorXd::Zero(n);
  for (const Eigen::VectorXd& s : supports) anchor += s;
  anchor /= static_cast<double>(supports.size());
  bool anchored = false;
  for (int tries = 0; tries < 60; ++tries) {
    if (min_eigenpair(truncated.evaluate(anchor)).value >= 0.05 * deep.margin) {
      anchored = true;
      break;
    }
    anchor = 0.5 * (anchor + deep.x);
  }
  if (!anchored) anchor = deep.x;

  CutCoreResult core =
      run_cutting(truncated, params.eps, params, seed_bundle, anchor, &solves);

  ApproxResult out;
  out.polyhedron = sum_with_cone(core.bundle.vrep(), cone.generators);
  out.certificate.cone_delta = cone.cone_delta;
  for (const Eigen::VectorXd& v : out.polyhedron.vertices) {
    auto it = core.table.find(vertex_key(v));
    require(it != core.table.end(), ErrorKind::NoConvergence,
            "output vertex lost its refinement certificate");
    out.certificate.vertex_bounds.push_back(it->second.bound);
  }

  std::vector<Eigen::VectorXd> pool = core.boundary_points;
  pool.push_back(anchor);
  pool.push_back(slater.x);
  for (const Eigen::VectorXd& s : supports) pool.push_back(s);
  out.certificate.containment_samples =
      sample_containment(c, out.polyhedron, pool, cone.recession_samples, 1000,
                         params.seed, 1e-6, std::nullopt);
  out.certificate.stats.sdp_solves = solves;
  out.certificate.stats.vertices_final =
      static_cast<long>(out.polyhedron.vertices.size());
  out.certificate.stats.wall_seconds = seconds_since(t0);
  return out;
}

ConeApproxResult cone_approximation(const Spectrahedron& c, double delta,
                                    const ApproxParams& params) {
  require(c.is_cone(), ErrorKind::NotHomogeneous,
          "cone approximation needs a homogeneous pencil (zero constant "
          "term)");
  ApproxParams p = params;
  p.delta = delta;
  validate_params(p, true);
  auto t0 = Clock::now();
  long solves = 0;
  ConeBuild cone = build_cone_certificate(c, p, &solves);

  ConeApproxResult out;
  out.generators = cone.generators;
  out.cone_delta = cone.cone_delta;
  out.sampled_lower =
      truncated_hausdorff_vs_spectrahedral_cone(cone.generators, c.recession())
          .lower.value;
  out.stats.sdp_solves = solves;
  out.stats.vertices_final = static_cast<long>(out.generators.size());
  out.stats.wall_seconds = seconds_since(t0);
  return out;
}

}  // namespace specpoly
