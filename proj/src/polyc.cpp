#include "specpoly/polyc.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>
#include <utility>

#include "specpoly/qp.hpp"

namespace specpoly {

namespace {

bool close_points(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                  double tol) {
  return (x - y).lpNorm<Eigen::Infinity>() <=
         tol * (1.0 + x.lpNorm<Eigen::Infinity>());
}

bool lex_less(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < y(i)) return true;
    if (x(i) > y(i)) return false;
  }
  return false;
}

void dedupe_points(std::vector<Eigen::VectorXd>* pts, double tol) {
  std::vector<Eigen::VectorXd> out;
  for (const Eigen::VectorXd& p : *pts) {
    bool seen = false;
    for (const Eigen::VectorXd& q : out) {
      if (close_points(p, q, tol)) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  *pts = std::move(out);
}

int matrix_rank(const Eigen::MatrixXd& m, double threshold = 1e-9) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(threshold);
  return static_cast<int>(qr.rank());
}

// Activity is decided at a looser relative tolerance than feasibility: a
// degenerate vertex pinned by more than n rows may be computed from an
// ill-conditioned row subset, landing a few orders above round-off.
constexpr double kActiveTol = 1e-5;

// Indices (increasing) of rows active at x.
std::vector<int> active_index(const HRep& h, const Eigen::VectorXd& x) {
  const double tol = kActiveTol * (1.0 + x.lpNorm<Eigen::Infinity>());
  std::vector<int> idx;
  for (Eigen::Index r = 0; r < h.a.rows(); ++r) {
    if (std::abs(h.a.row(r).dot(x) - h.b(r)) <= tol) {
      idx.push_back(static_cast<int>(r));
    }
  }
  return idx;
}

// Indices of rows active along a unit direction d (a^T d ~ 0).
std::vector<int> active_index_ray(const HRep& h, const Eigen::VectorXd& d) {
  std::vector<int> idx;
  for (Eigen::Index r = 0; r < h.a.rows(); ++r) {
    if (std::abs(h.a.row(r).dot(d)) <= kActiveTol) {
      idx.push_back(static_cast<int>(r));
    }
  }
  return idx;
}

Eigen::MatrixXd rows_at(const HRep& h, const std::vector<int>& idx) {
  Eigen::MatrixXd out(idx.size(), h.a.cols());
  for (size_t k = 0; k < idx.size(); ++k) out.row(k) = h.a.row(idx[k]);
  return out;
}

std::vector<int> common_rows(const std::vector<int>& p,
                             const std::vector<int>& q) {
  std::vector<int> out;
  std::set_intersection(p.begin(), p.end(), q.begin(), q.end(),
                        std::back_inserter(out));
  return out;
}

// Minimum-norm least-squares correction of x onto its active equalities, so
// copies of a degenerate vertex produced from different row subsets collapse
// onto one point before deduplication.  An implausibly large correction
// (ill-conditioned active set) leaves x untouched.
Eigen::VectorXd snap_to_active(const HRep& h, Eigen::VectorXd x) {
  for (int round = 0; round < 2; ++round) {
    std::vector<int> idx = active_index(h, x);
    if (idx.empty()) return x;
    Eigen::MatrixXd a = rows_at(h, idx);
    Eigen::VectorXd resid(idx.size());
    for (size_t k = 0; k < idx.size(); ++k) {
      resid(k) = h.a.row(idx[k]).dot(x) - h.b(idx[k]);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    Eigen::VectorXd step = cod.solve(resid);
    if (step.lpNorm<Eigen::Infinity>() >
        1e-3 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      return x;
    }
    x -= step;
  }
  return x;
}

void check_line_free(const std::vector<Eigen::VectorXd>& dirs) {
  for (size_t i = 0; i < dirs.size(); ++i) {
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      require((dirs[i] + dirs[j]).norm() > kDedupTol, ErrorKind::NotPointed,
              "direction list contains opposite rays (a line)");
    }
  }
}

}  // namespace

PolyBundle::PolyBundle(VRep v, HRep h) {
  v_ = std::move(v);
  h_ = std::move(h);
  require(!v_.vertices.empty(), ErrorKind::InvalidInput,
          "bundle needs at least one vertex");
  v_.dim = static_cast<int>(v_.vertices.front().size());
  // Normalize rows and directions so downstream tolerances are scale-free.
  for (Eigen::Index r = 0; r < h_.a.rows(); ++r) {
    double nrm = h_.a.row(r).norm();
    require(nrm > kDedupTol, ErrorKind::InvalidInput,
            "H-representation contains a zero row");
    h_.a.row(r) /= nrm;
    h_.b(r) /= nrm;
  }
  for (Eigen::VectorXd& d : v_.directions) {
    double nrm = d.norm();
    require(nrm > kDedupTol, ErrorKind::InvalidInput,
            "zero direction in V-representation");
    d /= nrm;
  }
  validate();
}

void PolyBundle::validate() const {
  const int n = v_.dim;
  require(h_.a.cols() == n, ErrorKind::InvalidInput,
          "H-rep and V-rep ambient dimensions differ");
  check_line_free(v_.directions);
  for (const Eigen::VectorXd& x : v_.vertices) {
    require(x.size() == n, ErrorKind::InvalidInput,
            "vertex dimension mismatch");
    Eigen::VectorXd resid = h_.a * x - h_.b;
    require(resid.maxCoeff() <= kGeoTol * (1.0 + x.lpNorm<Eigen::Infinity>()),
            ErrorKind::InvalidInput,
            "stored vertex violates a stored inequality");
    require(matrix_rank(rows_at(h_, active_index(h_, x))) >= n,
            ErrorKind::InvalidInput,
            "stored vertex is not pinned by n independent active rows");
  }
  for (const Eigen::VectorXd& d : v_.directions) {
    require((h_.a * d).maxCoeff() <= kGeoTol, ErrorKind::InvalidInput,
            "stored direction leaves the H-representation");
  }
}

PolyBundle PolyBundle::from_bounded_hrep(const HRep& h) {
  const int n = static_cast<int>(h.a.cols());
  const int m = static_cast<int>(h.a.rows());
  require(m >= n, ErrorKind::InvalidInput,
          "bounded polyhedron needs at least n rows");
  HRep hn = h;
  for (int r = 0; r < m; ++r) {
    double nrm = hn.a.row(r).norm();
    require(nrm > kDedupTol, ErrorKind::InvalidInput,
            "H-representation contains a zero row");
    hn.a.row(r) /= nrm;
    hn.b(r) /= nrm;
  }

  std::vector<Eigen::VectorXd> verts;
  std::vector<int> pick(n);
  // Exhaustive n-subset enumeration; fine for the small seed systems this
  // constructor is meant for.
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    Eigen::MatrixXd sub(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      sub.row(i) = hn.a.row(comb[i]);
      rhs(i) = hn.b(comb[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (lu.isInvertible()) {
      Eigen::VectorXd x = snap_to_active(hn, lu.solve(rhs));
      if ((hn.a * x - hn.b).maxCoeff() <=
          kGeoTol * (1.0 + x.lpNorm<Eigen::Infinity>())) {
        verts.push_back(x);
      }
    }
    // next combination
    int k = n - 1;
    while (k >= 0 && comb[k] == m - n + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (int j = k + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  dedupe_points(&verts, kDedupTol);
  require(!verts.empty(), ErrorKind::EmptyPolyhedron,
          "H-representation admits no vertex");

  PolyBundle out;
  out.v_.vertices = std::move(verts);
  out.v_.directions = {};
  out.v_.dim = n;
  out.h_ = std::move(hn);
  out.validate();
  return out;
}

PolyBundle PolyBundle::axis_box(const Eigen::VectorXd& lo,
                                const Eigen::VectorXd& hi) {
  const int n = static_cast<int>(lo.size());
  require(hi.size() == n && ((hi - lo).array() > 0).all(),
          ErrorKind::InvalidInput, "box bounds must satisfy lo < hi");
  HRep h;
  h.a = Eigen::MatrixXd::Zero(2 * n, n);
  h.b = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    h.a(2 * i, i) = 1.0;
    h.b(2 * i) = hi(i);
    h.a(2 * i + 1, i) = -1.0;
    h.b(2 * i + 1) = -lo(i);
  }
  PolyBundle out;
  out.h_ = std::move(h);
  out.v_.dim = n;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd corner(n);
    for (int i = 0; i < n; ++i) corner(i) = (mask >> i) & 1 ? hi(i) : lo(i);
    out.v_.vertices.push_back(corner);
  }
  out.validate();
  return out;
}

bool PolyBundle::feasible(const Eigen::VectorXd& x, double tol) const {
  return (h_.a * x - h_.b).maxCoeff() <= tol;
}

void PolyBundle::insert_halfspace(const Eigen::VectorXd& a, double beta) {
  const int n = v_.dim;
  require(a.size() == n, ErrorKind::InvalidInput,
          "halfspace normal dimension mismatch");
  double nrm = a.norm();
  require(nrm > kDedupTol, ErrorKind::InvalidInput,
          "halfspace normal must be nonzero");
  Eigen::VectorXd an = a / nrm;
  double bn = beta / nrm;

  // Same normal already stored?  A looser copy is a no-op; a tighter one
  // updates the offset in place after the vertex update.
  int existing = -1;
  for (Eigen::Index r = 0; r < h_.a.rows(); ++r) {
    if ((h_.a.row(r).transpose() - an).lpNorm<Eigen::Infinity>() <=
        kDedupTol) {
      if (bn >= h_.b(r) - kDedupTol * (1.0 + std::abs(h_.b(r)))) return;
      existing = static_cast<int>(r);
      break;
    }
  }

  std::vector<double> vs(v_.vertices.size());
  std::vector<double> vtol(v_.vertices.size());
  bool any_vertex_out = false;
  for (size_t i = 0; i < v_.vertices.size(); ++i) {
    vs[i] = an.dot(v_.vertices[i]) - bn;
    vtol[i] = kGeoTol * (1.0 + v_.vertices[i].lpNorm<Eigen::Infinity>());
    any_vertex_out = any_vertex_out || vs[i] > vtol[i];
  }
  std::vector<double> ds(v_.directions.size());
  bool any_ray_out = false;
  for (size_t j = 0; j < v_.directions.size(); ++j) {
    ds[j] = an.dot(v_.directions[j]);
    any_ray_out = any_ray_out || ds[j] > kGeoTol;
  }

  HRep h_next = h_;
  if (existing >= 0) {
    h_next.b(existing) = bn;
  } else {
    h_next.a.conservativeResize(h_next.a.rows() + 1, n);
    h_next.b.conservativeResize(h_next.b.size() + 1);
    h_next.a.row(h_next.a.rows() - 1) = an.transpose();
    h_next.b(h_next.b.size() - 1) = bn;
  }

  if (!any_vertex_out && !any_ray_out) {
    h_ = std::move(h_next);  // redundant cut; generators unchanged
    return;
  }

  std::vector<Eigen::VectorXd> kept_verts;
  for (size_t i = 0; i < v_.vertices.size(); ++i) {
    if (vs[i] <= vtol[i]) kept_verts.push_back(v_.vertices[i]);
  }
  std::vector<Eigen::VectorXd> kept_rays;
  for (size_t j = 0; j < v_.directions.size(); ++j) {
    if (ds[j] <= kGeoTol) kept_rays.push_back(v_.directions[j]);
  }

  // New vertices sit where the hyperplane crosses an edge of the current
  // polyhedron.  A generator pair spans an edge exactly when its common
  // active rows leave one degree of freedom, so candidates are generated
  // from pairs passing that rank test, snapped onto their active equalities,
  // and admitted once pinned by n independent rows of the grown system.
  std::vector<std::vector<int>> act_v(v_.vertices.size());
  for (size_t i = 0; i < v_.vertices.size(); ++i) {
    act_v[i] = active_index(h_, v_.vertices[i]);
  }
  std::vector<std::vector<int>> act_r(v_.directions.size());
  for (size_t j = 0; j < v_.directions.size(); ++j) {
    act_r[j] = active_index_ray(h_, v_.directions[j]);
  }

  std::vector<Eigen::VectorXd> candidates;
  for (size_t i = 0; i < v_.vertices.size(); ++i) {
    if (vs[i] >= -vtol[i]) continue;
    for (size_t o = 0; o < v_.vertices.size(); ++o) {
      if (vs[o] <= vtol[o]) continue;
      if (matrix_rank(rows_at(h_, common_rows(act_v[i], act_v[o]))) < n - 1) {
        continue;
      }
      double t = -vs[i] / (vs[o] - vs[i]);
      candidates.push_back(v_.vertices[i] +
                           t * (v_.vertices[o] - v_.vertices[i]));
    }
    for (size_t j = 0; j < v_.directions.size(); ++j) {
      if (ds[j] <= kGeoTol) continue;
      if (matrix_rank(rows_at(h_, common_rows(act_v[i], act_r[j]))) < n - 1) {
        continue;
      }
      candidates.push_back(v_.vertices[i] +
                           (-vs[i] / ds[j]) * v_.directions[j]);
    }
  }
  // An infeasible vertex whose escaping edge is an inward ray also leaves a
  // crossing behind.
  for (size_t o = 0; o < v_.vertices.size(); ++o) {
    if (vs[o] <= vtol[o]) continue;
    for (size_t j = 0; j < v_.directions.size(); ++j) {
      if (ds[j] >= -kGeoTol) continue;
      if (matrix_rank(rows_at(h_, common_rows(act_v[o], act_r[j]))) < n - 1) {
        continue;
      }
      candidates.push_back(v_.vertices[o] +
                           (-vs[o] / ds[j]) * v_.directions[j]);
    }
  }

  // New extreme directions come from two-dimensional recession faces spanned
  // by an in/out ray pair.
  std::vector<Eigen::VectorXd> ray_candidates;
  for (size_t j = 0; j < v_.directions.size(); ++j) {
    if (ds[j] >= -kGeoTol) continue;
    for (size_t o = 0; o < v_.directions.size(); ++o) {
      if (ds[o] <= kGeoTol) continue;
      if (matrix_rank(rows_at(h_, common_rows(act_r[j], act_r[o]))) < n - 2) {
        continue;
      }
      Eigen::VectorXd r =
          ds[o] * v_.directions[j] - ds[j] * v_.directions[o];
      double rn = r.norm();
      if (rn > kDedupTol) ray_candidates.push_back(r / rn);
    }
  }

  std::vector<Eigen::VectorXd> new_verts = kept_verts;
  for (const Eigen::VectorXd& raw : candidates) {
    Eigen::VectorXd x = snap_to_active(h_next, raw);
    double tol = kGeoTol * (1.0 + x.lpNorm<Eigen::Infinity>());
    if ((h_next.a * x - h_next.b).maxCoeff() > tol) continue;
    if (matrix_rank(rows_at(h_next, active_index(h_next, x))) < n) continue;
    new_verts.push_back(x);
  }
  dedupe_points(&new_verts, kDedupTol);

  std::vector<Eigen::VectorXd> new_rays = kept_rays;
  for (const Eigen::VectorXd& d : ray_candidates) {
    if ((h_next.a * d).maxCoeff() > kGeoTol) continue;
    if (matrix_rank(rows_at(h_next, active_index_ray(h_next, d))) < n - 1) {
      continue;
    }
    new_rays.push_back(d);
  }
  dedupe_points(&new_rays, kDedupTol);

  if (new_verts.empty()) {
    std::ostringstream msg;
    msg << "halfspace insertion emptied the polyhedron; violated row: [";
    for (int i = 0; i < n; ++i) msg << (i ? ", " : "") << an(i);
    msg << "] x <= " << bn;
    fail(ErrorKind::EmptyPolyhedron, msg.str());
  }

  v_.vertices = std::move(new_verts);
  v_.directions = std::move(new_rays);
  h_ = std::move(h_next);
}

HRep cone_facets(const std::vector<Eigen::VectorXd>& generators) {
  require(!generators.empty(), ErrorKind::InvalidInput,
          "cone needs at least one generator");
  const int n = static_cast<int>(generators.front().size());
  std::vector<Eigen::VectorXd> gens;
  for (const Eigen::VectorXd& g : generators) {
    require(g.size() == n, ErrorKind::InvalidInput,
            "generator dimension mismatch");
    double nrm = g.norm();
    require(nrm > kDedupTol, ErrorKind::InvalidInput,
            "zero generator in cone description");
    gens.push_back(g / nrm);
  }
  dedupe_points(&gens, kDedupTol);

  // Pointedness: 0 must be separated from the hull of the unit generators.
  ProjectionResult prj =
      project_point(Eigen::VectorXd::Zero(n), gens, {}, 1e-10);
  require(prj.distance > kGeoTol, ErrorKind::NotPointed,
          "generators positively span a line; cone has no facet description");

  Eigen::MatrixXd g(n, gens.size());
  for (size_t j = 0; j < gens.size(); ++j) g.col(j) = gens[j];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
  qr.setThreshold(1e-9);
  const int rank = static_cast<int>(qr.rank());

  std::vector<Eigen::VectorXd> rows;
  // Outside the linear span of the generators nothing is feasible: pin the
  // span with paired +/- rows from a complement basis.
  if (rank < n) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g.transpose());
    lu.setThreshold(1e-9);
    Eigen::MatrixXd kernel = lu.kernel();
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
      Eigen::VectorXd k = kernel.col(c) / kernel.col(c).norm();
      rows.push_back(k);
      rows.push_back(-k);
    }
  }

  Eigen::MatrixXd span_q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, rank);
  Eigen::MatrixXd gt = span_q.transpose() * g;  // generators in span coords

  if (rank == 1) {
    // A single ray: the in-span facet is the opposite direction.
    rows.push_back(-span_q * gt.col(0).normalized());
  } else {
    // Each facet of the solid in-span cone is spanned by rank-1 generators;
    // enumerate subsets, take the orthogonal direction, orient it outward.
    const int k = static_cast<int>(gens.size());
    std::vector<int> comb(rank - 1);
    for (int i = 0; i < rank - 1; ++i) comb[i] = i;
    while (true) {
      Eigen::MatrixXd sub(rank, rank - 1);
      for (int i = 0; i < rank - 1; ++i) sub.col(i) = gt.col(comb[i]);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> subqr(sub);
      subqr.setThreshold(1e-9);
      if (static_cast<int>(subqr.rank()) == rank - 1) {
        Eigen::MatrixXd full_q =
            Eigen::HouseholderQR<Eigen::MatrixXd>(sub).householderQ();
        Eigen::VectorXd normal = full_q.col(rank - 1);
        double hi = (normal.transpose() * gt).maxCoeff();
        double lo = (normal.transpose() * gt).minCoeff();
        if (hi <= 1e-9) {
          rows.push_back(span_q * normal);
        } else if (lo >= -1e-9) {
          rows.push_back(-(span_q * normal));
        }
      }
      int idx = rank - 2;
      while (idx >= 0 && comb[idx] == k - (rank - 1) + idx) --idx;
      if (idx < 0) break;
      ++comb[idx];
      for (int j = idx + 1; j < rank - 1; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  dedupe_points(&rows, kDedupTol);
  std::sort(rows.begin(), rows.end(), lex_less);
  HRep out;
  out.a.resize(rows.size(), n);
  out.b = Eigen::VectorXd::Zero(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) out.a.row(r) = rows[r];
  return out;
}

VRep minkowski_l1(const VRep& p, double rho) {
  require(rho >= 0.0, ErrorKind::InvalidInput,
          "l1 fattening radius must be nonnegative");
  require(!p.vertices.empty(), ErrorKind::InvalidInput,
          "l1 fattening needs a nonempty vertex list");
  if (rho == 0.0) return p;
  const int n = p.dim;
  std::vector<Eigen::VectorXd> candidates;
  for (const Eigen::VectorXd& v : p.vertices) {
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(i) = rho;
      candidates.push_back(v + e);
      candidates.push_back(v - e);
    }
  }
  dedupe_points(&candidates, kDedupTol);

  double scale = 0.0;
  for (const Eigen::VectorXd& c : candidates) {
    scale = std::max(scale, c.lpNorm<Eigen::Infinity>());
  }
  const double extreme_tol = kDedupTol * (1.0 + scale);

  VRep out;
  out.dim = n;
  out.directions = p.directions;
  for (size_t i = 0; i < candidates.size(); ++i) {
    std::vector<Eigen::VectorXd> others;
    for (size_t j = 0; j < candidates.size(); ++j) {
      if (j != i) others.push_back(candidates[j]);
    }
    ProjectionResult prj =
        project_point(candidates[i], others, p.directions, 1e-10);
    if (prj.distance > extreme_tol) out.vertices.push_back(candidates[i]);
  }
  require(!out.vertices.empty(), ErrorKind::InvalidInput,
          "l1 fattening produced no extreme vertex");
  return out;
}

std::vector<Eigen::VectorXd> conical_hull(
    const std::vector<Eigen::VectorXd>& points) {
  std::vector<Eigen::VectorXd> gens;
  for (const Eigen::VectorXd& p : points) {
    double nrm = p.norm();
    if (nrm > 1e-12) gens.push_back(p / nrm);
  }
  if (gens.empty()) return {};
  // Lexicographic sort before deduplication: each group of parallel
  // generators keeps its lexicographically smallest representative.
  std::sort(gens.begin(), gens.end(), lex_less);
  dedupe_points(&gens, kDedupTol);
  check_line_free(gens);
  const int n = static_cast<int>(gens.front().size());
  if (gens.size() > 1) {
    ProjectionResult prj =
        project_point(Eigen::VectorXd::Zero(n), gens, {}, 1e-10);
    require(prj.distance > kGeoTol, ErrorKind::NotPointed,
            "points positively span a line; conic hull is not pointed");
  }

  std::vector<Eigen::VectorXd> out;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::vector<Eigen::VectorXd> others;
    for (size_t j = 0; j < gens.size(); ++j) {
      if (j != i) others.push_back(gens[j]);
    }
    if (others.empty()) {
      out.push_back(gens[i]);
      continue;
    }
    ProjectionResult prj = project_point(gens[i], {}, others, 1e-10);
    if (prj.distance > kDedupTol) out.push_back(gens[i]);
  }
  return out;
}

VRep sum_with_cone(const VRep& p,
                   const std::vector<Eigen::VectorXd>& generators) {
  require(!p.vertices.empty(), ErrorKind::InvalidInput,
          "Minkowski sum needs a nonempty vertex list");
  std::vector<Eigen::VectorXd> all_dirs = p.directions;
  all_dirs.insert(all_dirs.end(), generators.begin(), generators.end());
  VRep out;
  out.dim = p.dim;
  out.directions = conical_hull(all_dirs);

  double scale = 0.0;
  for (const Eigen::VectorXd& v : p.vertices) {
    scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  }
  const double extreme_tol = kDedupTol * (1.0 + scale);
  std::vector<Eigen::VectorXd> verts = p.vertices;
  dedupe_points(&verts, kDedupTol);
  for (size_t i = 0; i < verts.size(); ++i) {
    std::vector<Eigen::VectorXd> others;
    for (size_t j = 0; j < verts.size(); ++j) {
      if (j != i) others.push_back(verts[j]);
    }
    if (others.empty()) {
      out.vertices.push_back(verts[i]);
      continue;
    }
    ProjectionResult prj = project_point(verts[i], others, out.directions, 1e-10);
    if (prj.distance > extreme_tol) out.vertices.push_back(verts[i]);
  }
  if (out.vertices.empty()) {
    // Every vertex absorbed into the others' hull can only happen when they
    // all coincide up to the cone; keep the lexicographically smallest.
    Eigen::VectorXd keep = verts.front();
    for (const Eigen::VectorXd& v : verts) {
      if (lex_less(v, keep)) keep = v;
    }
    out.vertices.push_back(keep);
  }
  return out;
}

}  // namespace specpoly
