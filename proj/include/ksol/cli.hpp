#pragma once

#include "ksol/config_io.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace ksol {

// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kFailures = 1, kSchema = 2, kInadmissible = 3, kNumeric = 4 };

struct SolveOptions {
  std::optional<double> s_max;
  std::optional<int> grid;
  double residual_tol = 1e-9;
  double t_rel_tol = 1e-10;
  double root_halfwidth = 50.0;
  double root_step = 0.25;
};

struct SolveOutcome {
  nlohmann::json report;
  std::string csv;  // empty when no profile could be built
  int exit_code = kOk;
};

// Resolves kappa1 = "solve" (compact: Futaki-type root; noncompact shrinker: chi root).
// Throws AdmissibilityError for other classes.
nlohmann::json solve_kappa1(RunConfig& rc, const SolveOptions& opt);

SolveOutcome cmd_solve(RunConfig rc, const SolveOptions& opt);
// CSV "kappa1,I"; sign changes are appended to sign_changes as "a,b" lines.
std::string cmd_futaki(const RunConfig& rc, double kappa_min, double kappa_max, int steps, std::string* sign_changes);
std::string cmd_reconstruct(RunConfig rc, const SolveOptions& opt, double t_max, int points);
std::string cmd_flow(RunConfig rc, const SolveOptions& opt, double tau, std::optional<double> t_max, int points);

// argv[0] is the program name. Writes results to out and diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ksol
