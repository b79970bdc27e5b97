#pragma once

#include <filesystem>
#include <string>

#include "pauli/splitting.hpp"

namespace pauli {

/// Everything a CLI run needs. JSON keys match the member names; "grid" is
/// an object {"lengths": [..3], "counts": [..3]} and "order" is "lie" or
/// "strang".
struct RunConfig {
  Vec3 lengths{10.0, 10.0, 10.0};
  std::array<int, 3> counts{25, 25, 25};
  std::string field_preset = "experiment1";
  std::string initial_preset = "gaussian-pair";
  double epsilon = 0.5;
  double dt = 0.05;
  double t_final = 1.0;
  SplittingOrder order = SplittingOrder::lie;
  int characteristic_substeps = 4;
  int snapshot_stride = 10;
  std::filesystem::path output_dir = "out";
  double gauge_tol = 1e-6;

  SolverConfig solver() const;
  /// Checks solver invariants and preset names; throws ConfigError.
  void validate() const;
};

/// Parses a JSON document; unknown keys and malformed values raise
/// ConfigError.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace pauli
