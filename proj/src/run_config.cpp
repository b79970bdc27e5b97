#include "pauli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pauli/errors.hpp"

namespace pauli {

using nlohmann::json;

SolverConfig RunConfig::solver() const {
  SolverConfig s;
  s.epsilon = epsilon;
  s.dt = dt;
  s.t_final = t_final;
  s.order = order;
  s.characteristic_substeps = characteristic_substeps;
  s.snapshot_stride = snapshot_stride;
  return s;
}

void RunConfig::validate() const {
  solver().validate();
  if (field_preset != "experiment1" && field_preset != "experiment2" && field_preset != "zero") {
    throw ConfigError("unknown preset: field_preset \"" + field_preset + "\"");
  }
  if (initial_preset != "gaussian-pair" && initial_preset != "spin-up") {
    throw ConfigError("unknown preset: initial_preset \"" + initial_preset + "\"");
  }
  if (!(gauge_tol > 0.0)) throw ConfigError("gauge_tol must be positive");
  try {
    build_grid(lengths, counts);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "grid",    "field_preset", "initial_preset",          "epsilon",
      "dt",      "t_final",      "order",                   "characteristic_substeps",
      "snapshot_stride",         "output_dir",              "gauge_tol"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key \"" + key + "\"");
  }

  RunConfig cfg;
  try {
    if (doc.contains("grid")) {
      const json& g = doc.at("grid");
      if (g.contains("lengths")) cfg.lengths = g.at("lengths").get<Vec3>();
      if (g.contains("counts")) cfg.counts = g.at("counts").get<std::array<int, 3>>();
    }
    if (doc.contains("field_preset")) cfg.field_preset = doc.at("field_preset").get<std::string>();
    if (doc.contains("initial_preset")) {
      cfg.initial_preset = doc.at("initial_preset").get<std::string>();
    }
    if (doc.contains("epsilon")) cfg.epsilon = doc.at("epsilon").get<double>();
    if (doc.contains("dt")) cfg.dt = doc.at("dt").get<double>();
    if (doc.contains("t_final")) cfg.t_final = doc.at("t_final").get<double>();
    if (doc.contains("order")) {
      const auto order = doc.at("order").get<std::string>();
      if (order == "lie") {
        cfg.order = SplittingOrder::lie;
      } else if (order == "strang") {
        cfg.order = SplittingOrder::strang;
      } else {
        throw ConfigError("order must be \"lie\" or \"strang\", got \"" + order + "\"");
      }
    }
    if (doc.contains("characteristic_substeps")) {
      cfg.characteristic_substeps = doc.at("characteristic_substeps").get<int>();
    }
    if (doc.contains("snapshot_stride")) cfg.snapshot_stride = doc.at("snapshot_stride").get<int>();
    if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("gauge_tol")) cfg.gauge_tol = doc.at("gauge_tol").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

}  // namespace pauli
