// Command-line front end for the weak Galerkin fourth-order solver.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wg/config.hpp"
#include "wg/error.hpp"
#include "wg/harness.hpp"

namespace {

std::string catalog_help() {
  std::ostringstream os;
  os << "\nCases (solve, convergence):\n";
  for (const auto& c : wg::case_catalog()) os << "  " << c.name << "  " << c.description << '\n';
  os << "Scenarios (ft-demo, solve):\n";
  for (const auto& s : wg::scenario_catalog()) os << "  " << s.name << "  " << s.description << '\n';
  os << "\nExit codes: 0 ok, 2 configuration error, 3 solver failure, 1 other.\n";
  return os.str();
}

wg::SolverConfig::Method parse_method(const std::string& m) {
  if (m == "cholesky") return wg::SolverConfig::Method::cholesky;
  if (m == "cg") return wg::SolverConfig::Method::conjugate_gradient;
  throw wg::ConfigError("--solver: expected cholesky or cg");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin solver for (-div(kappa grad) + mu)^2 u = f with Dirichlet and Neumann data"};
  app.footer(catalog_help());
  app.require_subcommand(1);

  std::string out;
  std::string config_path;
  std::string case_name;
  std::string scenario;
  std::vector<int> levels;
  std::vector<double> source;
  int n = 0;
  int samples = 0;
  std::string method = "cholesky";
  double tolerance = 1e-10;

  auto* solve = app.add_subcommand("solve", "Solve the problem described by a JSON config and write x,y,u0 samples");
  solve->add_option("--config", config_path, "JSON run configuration")->required();
  solve->add_option("--out", out, "Output CSV (overrides the config's \"out\")");

  auto* conv = app.add_subcommand("convergence", "Run a convergence study and write the error table");
  conv->add_option("--case", case_name, "Case name (see list below)")->required();
  conv->add_option("--levels", levels, "Comma-separated n values, increasing")->required()->delimiter(',');
  conv->add_option("--out", out, "Output CSV");
  conv->add_option("--solver", method, "cholesky or cg");
  conv->add_option("--tolerance", tolerance, "Relative residual tolerance");

  auto* demo = app.add_subcommand(
      "ft-demo",
      "Solve a fluorescence-tomography scenario and write x,y,u0 samples. gaussian-source uses zero "
      "Dirichlet and Neumann data");
  demo->add_option("--scenario", scenario, "Scenario name (see list below)")->required();
  demo->add_option("--source", source, "Source point x,y (gaussian-source)")->delimiter(',')->expected(2);
  demo->add_option("--n", n, "Subdivisions per side")->required();
  demo->add_option("--out", out, "Output CSV");
  demo->add_option("--samples", samples, "Sample grid size per side (default 2n+1)");
  demo->add_option("--solver", method, "cholesky or cg");

  auto* dump = app.add_subcommand("mesh-dump", "Write the structured mesh of the unit square as CSV");
  dump->add_option("--n", n, "Subdivisions per side")->required();
  dump->add_option("--out", out, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wg::kExitConfig;
  }

  wg::RunConfig cfg;
  try {
    if (*solve) {
      std::ifstream in(config_path);
      if (!in) throw wg::ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = wg::parse_config(buf.str());
      if (!out.empty()) cfg.out = out;
    } else if (*conv) {
      cfg.command = wg::RunConfig::Command::convergence;
      cfg.case_name = case_name;
      cfg.levels = levels;
      cfg.solver.method = parse_method(method);
      cfg.solver.tolerance = tolerance;
      cfg.out = out;
    } else if (*demo) {
      cfg.command = wg::RunConfig::Command::ft_demo;
      cfg.scenario = scenario;
      cfg.n = n;
      cfg.samples = samples;
      if (!source.empty()) cfg.source = wg::Vec2(source[0], source[1]);
      cfg.solver.method = parse_method(method);
      cfg.out = out;
    } else {
      cfg.command = wg::RunConfig::Command::mesh_dump;
      cfg.n = n;
      cfg.out = out;
    }
  } catch (const wg::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return wg::kExitConfig;
  }

  return wg::run_guarded(cfg, std::clog, std::cerr);
}
