#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wg/assembly.hpp"
#include "wg/coefficients.hpp"
#include "wg/mesh.hpp"
#include "wg/solve.hpp"

namespace wg {

struct RunConfig {
  enum class Command { solve, convergence, ft_demo, mesh_dump };

  Command command = Command::solve;
  std::string case_name;  // solve, convergence
  std::string scenario;   // ft-demo (solve accepts one too)
  std::optional<Vec2> source;
  int n = 0;
  std::vector<int> levels;
  SolverConfig solver;
  AssemblyOptions assembly;
  std::optional<CoefficientSpec> coefficients;  // replaces the case's coefficients
  std::optional<Rectangle> domain;              // mesh-dump only
  int samples = 0;                              // field grid size; 0 selects 2n + 1
  std::string out;                              // "-" or empty: standard output
};

std::string command_name(RunConfig::Command command);

/// Strict JSON parsing: unknown keys and type mismatches raise ConfigError
/// carrying the key path (e.g. "$.solver.tolerance"). The result is validated.
RunConfig parse_config(std::string_view text);

/// Cross-field checks (required keys per command, catalog names, n, levels).
void validate(const RunConfig& config);

/// Executes one command. Exceptions propagate; see run_guarded().
void run(const RunConfig& config, std::ostream& log);

/// Exit codes: 0 success, 2 configuration error, 3 solver failure, 1 other.
/// On failure prints one line "error: <category>: <message>" to `err`.
int run_guarded(const RunConfig& config, std::ostream& log, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

}  // namespace wg
