#include "specpoly/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "specpoly/qp.hpp"
#include "specpoly/sdp.hpp"

namespace specpoly {

namespace {

double halton(long index, int base) {
  double f = 1.0, r = 0.0;
  long i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

// Acklam's rational approximation of the standard normal quantile.
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p <= phigh) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  q = std::sqrt(-2 * std::log(1 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

std::vector<Eigen::VectorXd> unit_generators(
    const std::vector<Eigen::VectorXd>& gens) {
  std::vector<Eigen::VectorXd> out;
  for (const Eigen::VectorXd& g : gens) {
    double nrm = g.norm();
    require(nrm > 1e-12, ErrorKind::InvalidInput,
            "zero generator in cone description");
    out.push_back(g / nrm);
  }
  return out;
}

// One-sided excess of cone(a) over cone(b) on the unit ball, evaluated at
// the unit generators of a.  With b empty the target is {0}.
void cone_excess(const std::vector<Eigen::VectorXd>& a,
                 const std::vector<Eigen::VectorXd>& b, DistanceReport* best) {
  for (const Eigen::VectorXd& g : a) {
    double dist;
    Eigen::VectorXd to = Eigen::VectorXd::Zero(g.size());
    if (b.empty()) {
      dist = 1.0;  // unit generator against the trivial cone
    } else {
      ProjectionResult prj = project_point(g, {}, b, 1e-10);
      dist = prj.distance;
      to = prj.point;
    }
    if (dist > best->value) {
      best->value = dist;
      best->from_point = g;
      best->to_point = to;
    }
  }
}

}  // namespace

std::vector<Eigen::VectorXd> sphere_directions(int dim, int count) {
  require(dim >= 1 && count >= 0, ErrorKind::InvalidInput,
          "sphere sampling needs a positive dimension");
  require(dim <= 10, ErrorKind::InvalidInput,
          "sphere sampling supports up to 10 dimensions");
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  long index = 1;
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd u(dim);
    for (int k = 0; k < dim; ++k) {
      double h = halton(index, kPrimes[k]);
      h = std::min(std::max(h, 1e-12), 1.0 - 1e-12);
      u(k) = inverse_normal_cdf(h);
    }
    ++index;
    double nrm = u.norm();
    if (nrm > 1e-8) out.push_back(u / nrm);
  }
  return out;
}

DistanceReport dist_point_polytope(const Eigen::VectorXd& p, const VRep& q) {
  require(!q.vertices.empty(), ErrorKind::InvalidInput,
          "distance target must have at least one vertex");
  ProjectionResult prj = project_point(p, q.vertices, q.directions, 1e-10);
  DistanceReport out;
  out.value = prj.distance;
  out.from_point = p;
  out.to_point = prj.point;
  out.method = DistanceMethod::Exact;
  return out;
}

DistanceReport hausdorff_polytopes(const VRep& p, const VRep& q) {
  require(p.directions.empty() && q.directions.empty(), ErrorKind::InvalidInput,
          "Hausdorff distance requires compact polytopes");
  require(!p.vertices.empty() && !q.vertices.empty(), ErrorKind::InvalidInput,
          "Hausdorff distance requires nonempty polytopes");
  DistanceReport best;
  best.method = DistanceMethod::Exact;
  for (const Eigen::VectorXd& v : p.vertices) {
    ProjectionResult prj = project_point(v, q.vertices, {}, 1e-10);
    if (prj.distance > best.value) {
      best.value = prj.distance;
      best.from_point = v;
      best.to_point = prj.point;
    }
  }
  for (const Eigen::VectorXd& w : q.vertices) {
    ProjectionResult prj = project_point(w, p.vertices, {}, 1e-10);
    if (prj.distance > best.value) {
      best.value = prj.distance;
      best.from_point = w;
      best.to_point = prj.point;
    }
  }
  return best;
}

DistanceReport truncated_hausdorff(const std::vector<Eigen::VectorXd>& k1,
                                   const std::vector<Eigen::VectorXd>& k2) {
  std::vector<Eigen::VectorXd> a = unit_generators(k1);
  std::vector<Eigen::VectorXd> b = unit_generators(k2);
  DistanceReport best;
  best.method = DistanceMethod::Exact;
  cone_excess(a, b, &best);
  cone_excess(b, a, &best);
  if (best.from_point.size() == 0 && !a.empty()) {
    best.from_point = a.front();
    best.to_point = a.front();
  }
  return best;
}

ConeDistanceBounds truncated_hausdorff_vs_spectrahedral_cone(
    const std::vector<Eigen::VectorXd>& generators, const Spectrahedron& cone,
    int n_directions) {
  require(cone.is_cone(), ErrorKind::NotHomogeneous,
          "spectrahedral side must be a cone (zero constant term)");
  std::vector<Eigen::VectorXd> gens = unit_generators(generators);
  require(!gens.empty(), ErrorKind::InvalidInput,
          "polyhedral side needs at least one generator");
  const int n = cone.ambient_dim();
  HRep facets = cone_facets(gens);

  // Interior anchor of the spectrahedral cone for halfspace certificates.
  std::optional<Eigen::VectorXd> anchor;
  try {
    anchor = find_interior_point(cone, 1.0).x;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoInterior) throw;
  }

  std::vector<Eigen::VectorXd> dirs = gens;
  std::vector<Eigen::VectorXd> sampled = sphere_directions(n, n_directions);
  dirs.insert(dirs.end(), sampled.begin(), sampled.end());

  ConeDistanceBounds out;
  out.lower.method = DistanceMethod::SampledLower;
  out.lower.from_point = Eigen::VectorXd::Zero(n);
  out.lower.to_point = Eigen::VectorXd::Zero(n);
  for (const Eigen::VectorXd& u : dirs) {
    ++out.directions_checked;
    const bool in_poly = (facets.a * u).maxCoeff() <= kGeoTol;
    Membership mem = cone.contains(u);
    if (in_poly && mem.inside) continue;
    if (mem.inside && !in_poly) {
      // Exact distance from a spectrahedral member to the polyhedral cone
      // (distance to the truncation equals distance to the cone, ||u|| = 1).
      ProjectionResult prj = project_point(u, {}, gens, 1e-10);
      if (prj.distance > out.lower.value) {
        out.lower.value = prj.distance;
        out.lower.from_point = u;
        out.lower.to_point = prj.point;
      }
    } else if (in_poly && !mem.inside && anchor) {
      // Certified lower bound on dist(u, spectrahedral cone) via the
      // supporting halfspace at the segment crossing toward the anchor.
      P2Result p2 = solve_p2(cone, u, *anchor - u);
      double bound = p2.cut.t_star / p2.cut.normal.norm();
      if (bound > out.lower.value) {
        out.lower.value = bound;
        out.lower.from_point = u;
        out.lower.to_point = p2.cut.boundary_point;
      }
    }
  }
  return out;
}

double phda_bound(double eps, double delta, double r, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& v) {
  require(x.size() == v.size(), ErrorKind::InvalidInput,
          "ball center and vertex must share a dimension");
  require(eps >= 0.0 && delta >= 0.0 && r >= 0.0, ErrorKind::InvalidInput,
          "bound parameters must be nonnegative");
  return 2.0 * (eps + delta * (r + (x - v).norm()));
}

DistanceReport exc_over_recession(const VRep& p) {
  require(!p.vertices.empty(), ErrorKind::InvalidInput,
          "excess needs a nonempty vertex list");
  DistanceReport best;
  best.method = DistanceMethod::Exact;
  best.from_point = p.vertices.front();
  best.to_point = Eigen::VectorXd::Zero(p.dim);
  for (const Eigen::VectorXd& v : p.vertices) {
    double dist;
    Eigen::VectorXd to = Eigen::VectorXd::Zero(p.dim);
    if (p.directions.empty()) {
      dist = v.norm();  // recession cone is {0}
    } else {
      ProjectionResult prj = project_point(v, {}, p.directions, 1e-10);
      dist = prj.distance;
      to = prj.point;
    }
    if (dist >= best.value) {
      best.value = dist;
      best.from_point = v;
      best.to_point = to;
    }
  }
  return best;
}

SelfBoundedness self_bounded(const VRep& p) {
  require(!p.vertices.empty(), ErrorKind::InvalidInput,
          "self-boundedness needs a nonempty vertex list");
  SelfBoundedness out;
  out.extended = true;  // conv(vertices) is a bounded part by construction
  out.extended_bound = exc_over_recession(p).value;
  if (p.directions.empty()) {
    out.classic = false;  // trivial recession cone cannot absorb the set
    return out;
  }

  const int n = p.dim;
  std::vector<Eigen::VectorXd> dirs = unit_generators(p.directions);
  Eigen::MatrixXd g(n, dirs.size());
  for (size_t j = 0; j < dirs.size(); ++j) g.col(j) = dirs[j];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
  qr.setThreshold(1e-9);
  const int rank = static_cast<int>(qr.rank());
  Eigen::MatrixXd span_q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, rank);

  // A translate y + recc P confines movement across span(D) completely, so
  // all vertices must share their component orthogonal to the span.
  double scale = 0.0;
  for (const Eigen::VectorXd& v : p.vertices) {
    scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  }
  Eigen::VectorXd complement0 =
      p.vertices.front() - span_q * (span_q.transpose() * p.vertices.front());
  for (const Eigen::VectorXd& v : p.vertices) {
    Eigen::VectorXd comp = v - span_q * (span_q.transpose() * v);
    if ((comp - complement0).lpNorm<Eigen::Infinity>() >
        kGeoTol * (1.0 + scale)) {
      out.classic = false;
      return out;
    }
  }

  // Shared complement component: push the in-span part far enough against
  // the cone's interior direction that every vertex lands inside y + cone(D).
  std::vector<Eigen::VectorXd> gens_span;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(rank);
  for (size_t j = 0; j < dirs.size(); ++j) {
    gens_span.push_back(span_q.transpose() * dirs[j]);
    z += gens_span.back();
  }
  require(z.norm() > 1e-12, ErrorKind::NotPointed,
          "direction generators cancel; recession cone contains a line");
  z /= z.norm();
  HRep facets = cone_facets(gens_span);  // solid in span coordinates
  double t = 0.0;
  for (const Eigen::VectorXd& v : p.vertices) {
    Eigen::VectorXd vs = span_q.transpose() * v;
    for (Eigen::Index r = 0; r < facets.a.rows(); ++r) {
      double rz = facets.a.row(r).dot(z);
      require(rz < -1e-12, ErrorKind::NoConvergence,
              "cone interior direction failed to clear a facet");
      t = std::max(t, facets.a.row(r).dot(vs) / (-rz));
    }
  }
  out.classic = true;
  out.classic_witness = complement0 + span_q * (-(t + 1.0) * z);
  return out;
}

}  // namespace specpoly
