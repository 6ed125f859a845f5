#include "specpoly/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include <json.hpp>

#include "specpoly/errors.hpp"

namespace specpoly {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

Eigen::MatrixXd parse_square_matrix(const json& j, int m,
                                    const std::string& what) {
  require(j.is_array() && static_cast<int>(j.size()) == m,
          ErrorKind::InvalidInput,
          what + ": expected " + std::to_string(m) + " rows");
  Eigen::MatrixXd out(m, m);
  for (int r = 0; r < m; ++r) {
    const json& row = j.at(r);
    require(row.is_array() && static_cast<int>(row.size()) == m,
            ErrorKind::InvalidInput,
            what + ": expected " + std::to_string(m) + " columns in row " +
                std::to_string(r));
    for (int c = 0; c < m; ++c) {
      require(row.at(c).is_number(), ErrorKind::InvalidInput,
              what + ": non-numeric entry");
      out(r, c) = row.at(c).get<double>();
    }
  }
  return out;
}

json matrix_rows(const Eigen::MatrixXd& mat) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
    rows.push_back(row);
  }
  return rows;
}

json vector_row(const Eigen::VectorXd& v) {
  json row = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
  return row;
}

Eigen::VectorXd parse_vector(const json& j, int n, const std::string& what) {
  require(j.is_array() && static_cast<int>(j.size()) == n,
          ErrorKind::InvalidInput,
          what + ": expected " + std::to_string(n) + " coordinates");
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    require(j.at(i).is_number(), ErrorKind::InvalidInput,
            what + ": non-numeric coordinate");
    out(i) = j.at(i).get<double>();
  }
  return out;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::InvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
  out.flush();
  require(out.good(), ErrorKind::InvalidInput, "failed writing " + path);
}

void write_result_file(const std::string& path, int n, const VRep& body,
                       const json& certificate, const RunStats& stats) {
  json j;
  j["n"] = n;
  json verts = json::array();
  for (const Eigen::VectorXd& v : body.vertices) verts.push_back(vector_row(v));
  j["V"] = verts;
  json dirs = json::array();
  for (const Eigen::VectorXd& d : body.directions)
    dirs.push_back(vector_row(d));
  j["D"] = dirs;
  j["certificate"] = certificate;
  j["stats"] = {{"sdp_solves", stats.sdp_solves},
                {"vertices", stats.vertices_final},
                {"seconds", stats.wall_seconds}};
  write_json_file(path, j);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
      return 1;
    case ErrorKind::Unbounded:
      return 2;
    case ErrorKind::NotPointed:
      return 3;
    case ErrorKind::NoInterior:
      return 4;
    case ErrorKind::CompactInput:
      return 5;
    case ErrorKind::NotHomogeneous:
      return 6;
    case ErrorKind::DegenerateDirection:
      return 8;
    case ErrorKind::IterationCap:
      return 9;
    default:
      return 10;
  }
}

int report_error(const Error& e, const char* hint = nullptr) {
  std::cerr << "error: " << e.what() << '\n';
  if (hint != nullptr) std::cerr << "hint: " << hint << '\n';
  return exit_code(e.kind());
}

int report_unexpected(const std::exception& e) {
  std::cerr << "internal error: " << e.what() << '\n';
  return 10;
}

void report_run(const CliFlags& flags, const std::string& output,
                const VRep& body, const RunStats& stats) {
  if (!flags.quiet) {
    std::cout << "wrote " << output << ": vertices=" << body.vertices.size()
              << " directions=" << body.directions.size() << '\n';
  }
  if (flags.stats) {
    std::cout << "sdp_solves=" << stats.sdp_solves
              << " vertices=" << stats.vertices_final << " seconds="
              << stats.wall_seconds << '\n';
  }
}

ApproxParams params_from(const CliFlags& flags) {
  ApproxParams p;
  p.max_iterations = flags.max_iterations;
  p.seed = flags.seed;
  return p;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct PlotRow {
  Eigen::VectorXd x;
  bool ray = false;
};

// Counterclockwise boundary walk of a planar polyhedron in generator form.
// Rays are replaced by far-away proxy points so the walk reduces to the
// angular order of points in convex position; an unbounded region starts and
// ends with a ray row.
std::vector<PlotRow> boundary_walk_2d(const VRep& p) {
  std::vector<PlotRow> rows;
  if (p.vertices.empty()) {
    std::vector<Eigen::VectorXd> dirs = p.directions;
    std::sort(dirs.begin(), dirs.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                return std::atan2(a(1), a(0)) < std::atan2(b(1), b(0));
              });
    for (const Eigen::VectorXd& d : dirs) rows.push_back({d, true});
    return rows;
  }

  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  for (const Eigen::VectorXd& v : p.vertices) center += v;
  center /= static_cast<double>(p.vertices.size());
  double spread = 1.0;
  for (const Eigen::VectorXd& v : p.vertices) {
    spread = std::max(spread, (v.head(2) - center).norm());
  }
  const double far = 1e6 * spread;

  struct Entry {
    Eigen::Vector2d point;   // vertex or far proxy, for ordering
    Eigen::VectorXd output;  // vertex coordinates or ray direction
    bool ray;
  };
  std::vector<Entry> entries;
  for (const Eigen::VectorXd& v : p.vertices) {
    entries.push_back({v.head(2), v, false});
  }
  for (const Eigen::VectorXd& d : p.directions) {
    entries.push_back({center + far * d.head(2), d, true});
  }

  Eigen::Vector2d anchor = Eigen::Vector2d::Zero();
  for (const Entry& e : entries) anchor += e.point;
  anchor /= static_cast<double>(entries.size());
  std::sort(entries.begin(), entries.end(), [&](const Entry& a,
                                                const Entry& b) {
    double ta = std::atan2(a.point(1) - anchor(1), a.point(0) - anchor(0));
    double tb = std::atan2(b.point(1) - anchor(1), b.point(0) - anchor(0));
    if (ta != tb) return ta < tb;
    return (a.point - anchor).norm() < (b.point - anchor).norm();
  });

  const int total = static_cast<int>(entries.size());
  int start = 0;
  if (p.directions.empty()) {
    // Deterministic start: lexicographically smallest vertex.
    for (int i = 1; i < total; ++i) {
      const Eigen::VectorXd& a = entries[i].output;
      const Eigen::VectorXd& s = entries[start].output;
      if (a(0) < s(0) || (a(0) == s(0) && a(1) < s(1))) start = i;
    }
  } else {
    // Start at a ray whose circular predecessor is not a vertex row, so the
    // walk runs ray, vertices..., ray.
    for (int i = 0; i < total; ++i) {
      int prev = (i + total - 1) % total;
      if (entries[i].ray && (entries[prev].ray || p.directions.size() == 1)) {
        start = i;
        break;
      }
    }
    if (!entries[start].ray) {
      for (int i = 0; i < total; ++i) {
        if (entries[i].ray) {
          start = i;
          break;
        }
      }
    }
  }
  for (int k = 0; k < total; ++k) {
    const Entry& e = entries[(start + k) % total];
    rows.push_back({e.output, e.ray});
  }
  // A single extreme ray bounds the region on both unbounded ends.
  if (p.directions.size() == 1) rows.push_back(rows.front());
  return rows;
}

}  // namespace

Spectrahedron load_problem(const std::string& path) {
  json j = parse_file(path);
  require(j.is_object(), ErrorKind::InvalidInput, path + ": expected object");
  require(j.contains("n") && j["n"].is_number_integer(),
          ErrorKind::InvalidInput, path + ": missing integer field n");
  require(j.contains("m") && j["m"].is_number_integer(),
          ErrorKind::InvalidInput, path + ": missing integer field m");
  const int n = j["n"].get<int>();
  const int m = j["m"].get<int>();
  require(n >= 1 && m >= 1, ErrorKind::InvalidInput,
          path + ": n and m must be positive");
  require(j.contains("A0"), ErrorKind::InvalidInput, path + ": missing A0");
  require(j.contains("Ai") && j["Ai"].is_array() &&
              static_cast<int>(j["Ai"].size()) == n,
          ErrorKind::InvalidInput,
          path + ": Ai must list " + std::to_string(n) + " matrices");

  auto to_sym = [&](const Eigen::MatrixXd& mat,
                    const std::string& what) -> SymMatrix {
    double asym = (mat - mat.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
      std::cerr << "warning: " << path << ": " << what << " asymmetric by "
                << asym << ", symmetrizing\n";
    }
    return SymMatrix(mat);
  };

  SymMatrix a0 = to_sym(parse_square_matrix(j["A0"], m, path + ": A0"), "A0");
  std::vector<SymMatrix> coeffs;
  for (int i = 0; i < n; ++i) {
    std::string what = "Ai[" + std::to_string(i) + "]";
    coeffs.push_back(
        to_sym(parse_square_matrix(j["Ai"].at(i), m, path + ": " + what),
               what));
  }
  return Spectrahedron(std::move(a0), std::move(coeffs));
}

void write_problem(const std::string& path, const Spectrahedron& c,
                   const std::string& name) {
  json j;
  j["n"] = c.ambient_dim();
  j["m"] = c.pencil_dim();
  j["A0"] = matrix_rows(c.constant_term().mat());
  json ai = json::array();
  for (int i = 0; i < c.ambient_dim(); ++i) {
    ai.push_back(matrix_rows(c.coefficient(i).mat()));
  }
  j["Ai"] = ai;
  if (!name.empty()) j["metadata"] = {{"name", name}};
  write_json_file(path, j);
}

ResultFile load_result(const std::string& path) {
  json j = parse_file(path);
  require(j.is_object() && j.contains("n") && j["n"].is_number_integer(),
          ErrorKind::InvalidInput, path + ": expected result object");
  ResultFile out;
  out.n = j["n"].get<int>();
  require(out.n >= 1, ErrorKind::InvalidInput, path + ": n must be positive");
  out.body.dim = out.n;
  for (const json& row : j.value("V", json::array())) {
    out.body.vertices.push_back(parse_vector(row, out.n, path + ": V row"));
  }
  for (const json& row : j.value("D", json::array())) {
    out.body.directions.push_back(parse_vector(row, out.n, path + ": D row"));
  }
  json cert = j.value("certificate", json::object());
  out.vertex_bounds = cert.value("vertex_bounds", std::vector<double>{});
  out.cone_delta = cert.value("cone_delta", 0.0);
  out.containment_samples = cert.value("containment_samples", 0L);
  out.sampled_lower = cert.value("sampled_lower", 0.0);
  json stats = j.value("stats", json::object());
  out.stats.sdp_solves = stats.value("sdp_solves", 0L);
  out.stats.vertices_final = stats.value("vertices", 0L);
  out.stats.wall_seconds = stats.value("seconds", 0.0);
  return out;
}

int cmd_approx(const std::string& input, double eps, double delta,
               const std::string& output, const CliFlags& flags) {
  try {
    Spectrahedron c = load_problem(input);
    ApproxParams params = params_from(flags);
    params.eps = eps;
    params.delta = delta;
    ApproxResult res = eda_approximation(c, params);
    json cert = {{"vertex_bounds", res.certificate.vertex_bounds},
                 {"cone_delta", res.certificate.cone_delta},
                 {"containment_samples", res.certificate.containment_samples}};
    write_result_file(output, c.ambient_dim(), res.polyhedron, cert,
                      res.certificate.stats);
    report_run(flags, output, res.polyhedron, res.certificate.stats);
    return 0;
  } catch (const Error& e) {
    return report_error(e, e.kind() == ErrorKind::CompactInput
                               ? "run the `cutting` subcommand on compact "
                                 "inputs"
                               : nullptr);
  } catch (const std::exception& e) {
    return report_unexpected(e);
  }
}

int cmd_cutting(const std::string& input, double eps,
                const std::string& output, const CliFlags& flags) {
  try {
    Spectrahedron c = load_problem(input);
    ApproxParams params = params_from(flags);
    ApproxResult res = cutting_scheme(c, eps, params);
    json cert = {{"vertex_bounds", res.certificate.vertex_bounds},
                 {"cone_delta", res.certificate.cone_delta},
                 {"containment_samples", res.certificate.containment_samples}};
    write_result_file(output, c.ambient_dim(), res.polyhedron, cert,
                      res.certificate.stats);
    report_run(flags, output, res.polyhedron, res.certificate.stats);
    return 0;
  } catch (const Error& e) {
    return report_error(e, e.kind() == ErrorKind::Unbounded
                               ? "run the `approx` subcommand on unbounded "
                                 "inputs"
                               : nullptr);
  } catch (const std::exception& e) {
    return report_unexpected(e);
  }
}

int cmd_cone(const std::string& input, double delta, const std::string& output,
             const CliFlags& flags) {
  try {
    Spectrahedron c = load_problem(input);
    ApproxParams params = params_from(flags);
    ConeApproxResult res = cone_approximation(c, delta, params);
    VRep body;
    body.dim = c.ambient_dim();
    body.directions = res.generators;
    json cert = {{"cone_delta", res.cone_delta},
                 {"sampled_lower", res.sampled_lower}};
    write_result_file(output, c.ambient_dim(), body, cert, res.stats);
    report_run(flags, output, body, res.stats);
    return 0;
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    return report_unexpected(e);
  }
}

int cmd_plot(const std::string& input, const std::string& output,
             const CliFlags& flags) {
  try {
    ResultFile r = load_result(input);
    std::vector<PlotRow> rows;
    bool spatial_cone = r.n == 3 && r.body.vertices.empty() &&
                        !r.body.directions.empty();
    if (r.n == 2) {
      rows = boundary_walk_2d(r.body);
    } else if (spatial_cone) {
      for (const Eigen::VectorXd& d : r.body.directions) {
        rows.push_back({d, true});
      }
    } else {
      std::cerr << "error: plot supports planar results and "
                   "three-dimensional cones\n";
      return 7;
    }

    std::ofstream out(output);
    require(out.good(), ErrorKind::InvalidInput, "cannot write " + output);
    out << (spatial_cone ? "x1,x2,x3,kind" : "x1,x2,kind") << '\n';
    for (const PlotRow& row : rows) {
      for (Eigen::Index i = 0; i < row.x.size(); ++i) {
        out << format_number(row.x(i)) << ',';
      }
      out << (row.ray ? "ray" : "vertex") << '\n';
    }
    out.flush();
    require(out.good(), ErrorKind::InvalidInput, "failed writing " + output);
    if (!flags.quiet) {
      std::cout << "wrote " << output << ": rows=" << rows.size() << '\n';
    }
    return 0;
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    return report_unexpected(e);
  }
}

}  // namespace specpoly
