#pragma once

#include <ostream>
#include <vector>

#include "pauli/run_config.hpp"

namespace pauli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitValidation = 3,
  kExitDivergence = 4,
};

/// Time-steps the configured problem, writing series.csv and snapshot
/// files into cfg.output_dir. Field validation at gauge_tol is mandatory.
int run_command(const RunConfig& cfg, std::ostream& log);
int run_command(const RunConfig& cfg, const EMFields& fields, std::ostream& log);

/// Self-convergence table (converge.csv): each coarse dt against one run at
/// dt_reference, compared at t_final.
int converge_command(const RunConfig& cfg, const std::vector<double>& dt_list,
                     double dt_reference, std::ostream& log);
int converge_command(const RunConfig& cfg, const EMFields& fields,
                     const std::vector<double>& dt_list, double dt_reference, std::ostream& log);

/// Error against the dense exponential oracle (oracle.csv).
int oracle_command(const RunConfig& cfg, const std::vector<double>& dt_list, std::ostream& log);
int oracle_command(const RunConfig& cfg, const EMFields& fields,
                   const std::vector<double>& dt_list, std::ostream& log);

/// Runs a few steps and checks the structural invariants of the scheme,
/// printing one PASS/FAIL/SKIP line per check.
int validate_command(const RunConfig& cfg, std::ostream& log);
int validate_command(const RunConfig& cfg, const EMFields& fields, std::ostream& log);

}  // namespace pauli
