#pragma once

#include <string>

#include "specpoly/approx.hpp"
#include "specpoly/spectra.hpp"

namespace specpoly {

// Flags shared by the command entry points.
struct CliFlags {
  int max_iterations = 10000;
  unsigned seed = 12345;  // sampling validators only; the core path is fixed
  bool stats = false;     // print the run statistics line
  bool quiet = false;     // suppress informational output
};

// Problem files are JSON: {"n", "m", "A0": m x m row-major, "Ai": n such
// matrices, optional "metadata": {"name", "notes"}}.  Matrix entries are
// symmetrized on load; asymmetry beyond 1e-12 draws a warning on stderr.
Spectrahedron load_problem(const std::string& path);
void write_problem(const std::string& path, const Spectrahedron& c,
                   const std::string& name = "");

// Result files are JSON: {"n", "V": vertex rows, "D": direction rows,
// "certificate", "stats"}; doubles round-trip bit-exactly.
struct ResultFile {
  int n = 0;
  VRep body;
  std::vector<double> vertex_bounds;
  double cone_delta = 0.0;
  long containment_samples = 0;
  double sampled_lower = 0.0;  // cone runs only
  RunStats stats;
};
ResultFile load_result(const std::string& path);

// Command entry points behind the CLI; each reports errors on stderr and
// returns the process exit code:
//   0 success                1 unreadable/invalid input
//   2 unbounded input        3 recession cone not pointed
//   4 empty interior         5 compact input (use `cutting`)
//   6 non-homogeneous cone   7 unplottable dimensions
//   8 degenerate trace direction                9 iteration cap
//   10 internal error
int cmd_approx(const std::string& input, double eps, double delta,
               const std::string& output, const CliFlags& flags = {});
int cmd_cutting(const std::string& input, double eps,
                const std::string& output, const CliFlags& flags = {});
int cmd_cone(const std::string& input, double delta, const std::string& output,
             const CliFlags& flags = {});
// Plot data from a result file: for n = 2 an ordered counterclockwise
// boundary polyline (CSV header x1,x2,kind), unbounded ends marked by ray
// rows; for n = 3 cone results the generator rows (header x1,x2,x3,kind).
int cmd_plot(const std::string& input, const std::string& output,
             const CliFlags& flags = {});

}  // namespace specpoly
