#include <iostream>

#include <CLI11.hpp>

#include "pauli/commands.hpp"
#include "pauli/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Time splitting solver for the linear Pauli equation on a periodic box"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<double> dt_list;
  double dt_reference = 0.0;

  auto* run = app.add_subcommand("run", "time-step a configuration, writing series and snapshots");
  run->add_option("--config", config_path, "JSON run configuration")->required();

  auto* converge = app.add_subcommand("converge", "self-convergence against a finer reference dt");
  converge->add_option("--config", config_path, "JSON run configuration")->required();
  converge->add_option("--dt", dt_list, "coarse step sizes")->required()->expected(1, -1);
  converge->add_option("--dt-ref", dt_reference, "reference step size")->required();

  auto* oracle = app.add_subcommand("oracle", "error against the dense exponential oracle");
  oracle->add_option("--config", config_path, "JSON run configuration")->required();
  oracle->add_option("--dt", dt_list, "step sizes")->required()->expected(1, -1);

  auto* validate = app.add_subcommand("validate", "check the scheme's structural invariants");
  validate->add_option("--config", config_path, "JSON run configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pauli::kExitConfig;
  }

  pauli::apply_thread_limit();

  pauli::RunConfig cfg;
  try {
    cfg = pauli::load_run_config(config_path);
  } catch (const pauli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pauli::kExitConfig;
  }

  if (run->parsed()) return pauli::run_command(cfg, std::cerr);
  if (converge->parsed()) return pauli::converge_command(cfg, dt_list, dt_reference, std::cerr);
  if (oracle->parsed()) return pauli::oracle_command(cfg, dt_list, std::cerr);
  return pauli::validate_command(cfg, std::cout);
}
