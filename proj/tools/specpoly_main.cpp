#include <string>

#include <CLI11.hpp>

#include "specpoly/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"certified polyhedral outer approximation of spectrahedra"};
  app.require_subcommand(1);

  std::string input, output;
  double eps = 0.1, delta = 0.1;
  specpoly::CliFlags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input, "problem file (JSON)")->required();
    sub->add_option("output", output, "result file (JSON)")->required();
    sub->add_option("--max-iter", flags.max_iterations,
                    "refinement iteration cap");
    sub->add_option("--seed", flags.seed, "seed for the sampling validators");
    sub->add_flag("--stats", flags.stats, "print the run statistics line");
    sub->add_flag("--quiet", flags.quiet, "suppress informational output");
  };

  CLI::App* approx = app.add_subcommand(
      "approx", "(eps, delta)-approximation of an unbounded spectrahedron");
  add_common(approx);
  approx->add_option("--eps", eps, "vertex excess tolerance");
  approx->add_option("--delta", delta, "recession cone tolerance");

  CLI::App* cutting = app.add_subcommand(
      "cutting", "eps-approximation of a compact spectrahedron");
  add_common(cutting);
  cutting->add_option("--eps", eps, "vertex excess tolerance");

  CLI::App* cone = app.add_subcommand(
      "cone", "polyhedral outer cone of a spectrahedral cone");
  add_common(cone);
  cone->add_option("--delta", delta, "cone deviation tolerance");

  CLI::App* plot =
      app.add_subcommand("plot", "CSV plot data from a result file");
  plot->add_option("input", input, "result file (JSON)")->required();
  plot->add_option("output", output, "CSV file")->required();
  plot->add_flag("--quiet", flags.quiet, "suppress informational output");

  CLI11_PARSE(app, argc, argv);

  if (approx->parsed()) {
    return specpoly::cmd_approx(input, eps, delta, output, flags);
  }
  if (cutting->parsed()) {
    return specpoly::cmd_cutting(input, eps, output, flags);
  }
  if (cone->parsed()) {
    return specpoly::cmd_cone(input, delta, output, flags);
  }
  return specpoly::cmd_plot(input, output, flags);
}
