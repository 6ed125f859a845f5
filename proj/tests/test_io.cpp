#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <Eigen/Dense>
#include <json.hpp>

#include "oracles.hpp"
#include "specpoly/io.hpp"

using namespace specpoly;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("specpoly_io_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path_of(const std::string& name) {
  return (work_dir() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliFlags quiet_flags() {
  CliFlags f;
  f.quiet = true;
  return f;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(SPECPOLY_CLI_PATH) + " " + args +
                    " > /dev/null 2> /dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

struct CsvRow {
  std::vector<double> x;
  std::string kind;
};

std::vector<CsvRow> read_csv(const std::string& path, int coords) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    CsvRow row;
    std::string field;
    for (int i = 0; i < coords; ++i) {
      std::getline(ss, field, ',');
      row.x.push_back(std::stod(field));
    }
    std::getline(ss, row.kind, ',');
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("problem files round-trip bit-exactly") {
  Spectrahedron c = oracle::hyperbola_parabola_pencil();
  std::string path = path_of("problem.json");
  write_problem(path, c, "benchmark");
  Spectrahedron back = load_problem(path);
  REQUIRE(back.ambient_dim() == c.ambient_dim());
  REQUIRE(back.pencil_dim() == c.pencil_dim());
  CHECK((back.constant_term().mat().array() ==
         c.constant_term().mat().array()).all());
  for (int i = 0; i < c.ambient_dim(); ++i)
    CHECK((back.coefficient(i).mat().array() ==
           c.coefficient(i).mat().array()).all());
}

TEST_CASE("loading symmetrizes slightly asymmetric input") {
  std::string path = path_of("asym.json");
  {
    std::ofstream out(path);
    out << R"({"n": 1, "m": 2,
               "A0": [[1.0, 0.5], [0.49, 1.0]],
               "Ai": [[[1.0, 0.0], [0.0, 1.0]]]})";
  }
  Spectrahedron c = load_problem(path);
  CHECK(c.constant_term()(0, 1) == doctest::Approx(0.495).epsilon(1e-15));
  CHECK(c.constant_term()(1, 0) == c.constant_term()(0, 1));
}

TEST_CASE("malformed and missing files are rejected") {
  std::string bad = path_of("bad.json");
  {
    std::ofstream out(bad);
    out << "{\"n\": 2, \"m\": ";
  }
  CHECK_THROWS_AS(load_problem(bad), Error);
  CHECK_THROWS_AS(load_problem(path_of("nonexistent.json")), Error);

  // Dimension mismatch between declared and actual matrices.
  std::string mismatch = path_of("mismatch.json");
  {
    std::ofstream out(mismatch);
    out << R"({"n": 2, "m": 2,
               "A0": [[1.0, 0.0], [0.0, 1.0]],
               "Ai": [[[1.0, 0.0], [0.0, 1.0]]]})";
  }
  CHECK_THROWS_AS(load_problem(mismatch), Error);
}

TEST_CASE("compact refinement command writes a loadable certificate") {
  std::string in = path_of("disk.json");
  write_problem(in, oracle::unit_disk_pencil(), "disk");
  std::string out = path_of("disk_out.json");
  CHECK(cmd_cutting(in, 0.1, out, quiet_flags()) == 0);

  ResultFile r = load_result(out);
  CHECK(r.n == 2);
  CHECK(r.body.vertices.size() >= 4);
  CHECK(r.body.directions.empty());
  REQUIRE(r.vertex_bounds.size() == r.body.vertices.size());
  for (double b : r.vertex_bounds) CHECK(b <= 0.1);
  CHECK(r.containment_samples == 1000);
  CHECK(r.stats.vertices_final ==
        static_cast<long>(r.body.vertices.size()));
  CHECK(r.stats.sdp_solves > 0);

  // Determinism: a second run writes the identical file up to wall time.
  std::string out2 = path_of("disk_out2.json");
  CHECK(cmd_cutting(in, 0.1, out2, quiet_flags()) == 0);
  auto strip_timing = [](const std::string& p) {
    nlohmann::json j = nlohmann::json::parse(slurp(p));
    j["stats"].erase("seconds");
    return j.dump();
  };
  CHECK(strip_timing(out) == strip_timing(out2));
}

TEST_CASE("unbounded driver command emits rays and bounds") {
  std::string in = path_of("bench.json");
  write_problem(in, oracle::hyperbola_parabola_pencil(), "bench");
  std::string out = path_of("bench_out.json");
  CHECK(cmd_approx(in, 0.2, 0.2, out, quiet_flags()) == 0);
  ResultFile r = load_result(out);
  CHECK(!r.body.vertices.empty());
  CHECK(!r.body.directions.empty());
  CHECK(r.cone_delta <= 0.2);
  CHECK(r.containment_samples == 1000);
}

TEST_CASE("cone command reports both cone certificates") {
  std::string in = path_of("psd.json");
  write_problem(in, oracle::psd2_cone_pencil(), "psd");
  std::string out = path_of("psd_out.json");
  CHECK(cmd_cone(in, 0.2, out, quiet_flags()) == 0);
  ResultFile r = load_result(out);
  CHECK(r.n == 3);
  CHECK(r.body.vertices.empty());
  CHECK(r.body.directions.size() >= 5);
  CHECK(r.cone_delta <= 0.2);
  CHECK(r.sampled_lower <= r.cone_delta + 1e-6);
}

TEST_CASE("dispatch errors map to documented exit codes") {
  std::string disk = path_of("disk.json");
  write_problem(disk, oracle::unit_disk_pencil(), "disk");
  std::string bench = path_of("bench.json");
  write_problem(bench, oracle::hyperbola_parabola_pencil(), "bench");
  std::string tri = path_of("tri.json");
  write_problem(tri, oracle::triangle_pencil(), "tri");
  std::string sink = path_of("sink.json");

  // Unreadable input.
  CHECK(cmd_cutting(path_of("nope.json"), 0.1, sink, quiet_flags()) == 1);
  // Compact refinement fed an unbounded set.
  CHECK(cmd_cutting(bench, 0.1, sink, quiet_flags()) == 2);
  // Unbounded driver fed compact sets (traceless and traced pencils).
  CHECK(cmd_approx(disk, 0.1, 0.1, sink, quiet_flags()) == 5);
  CHECK(cmd_approx(tri, 0.1, 0.1, sink, quiet_flags()) == 5);
  // Cone routine fed a non-homogeneous pencil.
  CHECK(cmd_cone(tri, 0.1, sink, quiet_flags()) == 6);

  // Recession cone with a line: half-plane { x1 >= -1 } in the plane.
  std::string half = path_of("half.json");
  {
    Eigen::VectorXd one(2), zero(2);
    one << 1, 1;
    zero << 0, 0;
    Spectrahedron halfplane(
        SymMatrix::identity(2),
        {SymMatrix::diagonal(one), SymMatrix::diagonal(zero)});
    write_problem(half, halfplane, "half");
  }
  CHECK(cmd_approx(half, 0.1, 0.1, sink, quiet_flags()) == 3);

  // Degenerate orientation: traceless unbounded pencil via the cone command.
  std::string cross = path_of("cross.json");
  {
    Eigen::MatrixXd a1(2, 2);
    a1 << 0, 1, 1, 0;
    Spectrahedron cross_set(SymMatrix::zero(2),
                            {SymMatrix(a1), SymMatrix::zero(2)});
    write_problem(cross, cross_set, "cross");
  }
  CHECK(cmd_cone(cross, 0.1, sink, quiet_flags()) == 8);
}

TEST_CASE("planar plot walks the boundary counterclockwise") {
  std::string in = path_of("square.json");
  write_problem(in, oracle::unit_square_pencil(), "square");
  std::string out = path_of("square_out.json");
  REQUIRE(cmd_cutting(in, 0.01, out, quiet_flags()) == 0);
  std::string csv = path_of("square.csv");
  CHECK(cmd_plot(out, csv, quiet_flags()) == 0);

  std::vector<CsvRow> rows = read_csv(csv, 2);
  REQUIRE(rows.size() == 4);
  double area2 = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& p = rows[i].x;
    const auto& q = rows[(i + 1) % rows.size()].x;
    area2 += p[0] * q[1] - q[0] * p[1];
    CHECK(rows[i].kind == "vertex");
  }
  CHECK(area2 == doctest::Approx(2.0).epsilon(1e-6));  // CCW unit square
}

TEST_CASE("planar plot marks unbounded ends with ray rows") {
  std::string in = path_of("bench.json");
  write_problem(in, oracle::hyperbola_parabola_pencil(), "bench");
  std::string out = path_of("bench_plot.json");
  REQUIRE(cmd_approx(in, 0.2, 0.2, out, quiet_flags()) == 0);
  std::string csv = path_of("bench.csv");
  CHECK(cmd_plot(out, csv, quiet_flags()) == 0);
  int rays = 0, vertices = 0;
  for (const auto& row : read_csv(csv, 2))
    (row.kind == "ray" ? rays : vertices)++;
  CHECK(rays >= 1);
  CHECK(vertices >= 3);
}

TEST_CASE("spatial plots cover cones and reject general bodies") {
  std::string in = path_of("psd.json");
  write_problem(in, oracle::psd2_cone_pencil(), "psd");
  std::string out = path_of("psd_plot.json");
  REQUIRE(cmd_cone(in, 0.2, out, quiet_flags()) == 0);
  std::string csv = path_of("psd.csv");
  CHECK(cmd_plot(out, csv, quiet_flags()) == 0);
  for (const auto& row : read_csv(csv, 3)) CHECK(row.kind == "ray");

  // A three-dimensional body with vertices is not plottable.
  std::string soc = path_of("soc.json");
  write_problem(soc, oracle::shifted_soc_pencil(), "soc");
  std::string soc_out = path_of("soc_out.json");
  REQUIRE(cmd_approx(soc, 0.3, 0.3, soc_out, quiet_flags()) == 0);
  CHECK(cmd_plot(soc_out, path_of("soc.csv"), quiet_flags()) == 7);
}

TEST_CASE("installed binary honors the same contract") {
  std::string disk = path_of("disk.json");
  write_problem(disk, oracle::unit_disk_pencil(), "disk");
  CHECK(run_cli("cutting " + disk + " --eps 0.2 " + path_of("cli_disk.json") +
                " --quiet") == 0);
  CHECK(run_cli("approx " + disk + " --eps 0.1 --delta 0.1 " +
                path_of("cli_sink.json")) == 5);
  CHECK(run_cli("cutting " + path_of("nope.json") + " " +
                path_of("cli_sink.json")) == 1);
}
