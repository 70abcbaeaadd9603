#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>

#include "wg/config.hpp"
#include "wg/error.hpp"
#include "wg/harness.hpp"

namespace wg {

namespace {

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

CaseCatalogEntry resolve_entry(const RunConfig& cfg) {
  CaseCatalogEntry entry = cfg.case_name.empty() ? make_scenario(cfg.scenario, cfg.n, cfg.source)
                                                 : make_case(cfg.case_name);
  if (cfg.coefficients) entry.problem.coefficients = *cfg.coefficients;
  return entry;
}

void emit_field(const RunConfig& cfg, const CaseCatalogEntry& entry, std::ostream& log) {
  const Solution s = solve_case(entry, cfg.n, cfg.solver, cfg.assembly);
  const int m = cfg.samples > 0 ? cfg.samples : 2 * cfg.n + 1;
  const auto samples = sample_field(s.mesh, s.uh, m);
  log << entry.name << ": n=" << cfg.n << " dofs=" << s.uh.dofs().size()
      << " residual=" << format_number(s.report.relative_residual) << '\n';
  if (entry.problem.exact) {
    const ErrorReport r = error_report(s.mesh, s.coefficients, *entry.problem.exact, s.uh, cfg.assembly);
    log << "l2_e0=" << format_number(r.l2_e0) << " tbar=" << format_number(r.tbar)
        << " eb=" << format_number(r.eb_edge) << " eg=" << format_number(r.eg_edge) << '\n';
  }
  with_output(cfg.out, [&](std::ostream& os) { write_field_csv(samples, os); });
}

}  // namespace

void run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  switch (cfg.command) {
    case RunConfig::Command::solve:
    case RunConfig::Command::ft_demo:
      emit_field(cfg, resolve_entry(cfg), log);
      break;
    case RunConfig::Command::convergence: {
      const CaseCatalogEntry entry = resolve_entry(cfg);
      const ConvergenceTable table = run_convergence(entry, cfg.levels, cfg.solver, cfg.assembly);
      with_output(cfg.out, [&](std::ostream& os) { write_convergence_csv(table, os); });
      if (!cfg.out.empty() && cfg.out != "-") write_convergence_csv(table, log);
      break;
    }
    case RunConfig::Command::mesh_dump: {
      const Mesh mesh = build_structured_mesh(cfg.domain.value_or(Rectangle{}), cfg.n);
      with_output(cfg.out, [&](std::ostream& os) { write_mesh_csv(mesh, os); });
      break;
    }
  }
}

int run_guarded(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    run(cfg, log);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    err << "error: solver: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace wg
