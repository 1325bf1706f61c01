#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "impact/game.hpp"
#include "impact/io.hpp"

namespace impact {

/// One requested computation. `kind` is one of equilibrium, myopic, tim,
/// implied-price, implied-exec, fit, multiasset, theta-sweep; `params` holds
/// kind-specific fields and may override the experiment's game under "game".
struct ProcedureSpec {
  std::string name;
  std::string kind;
  Json params = Json::object();
};

struct ExperimentConfig {
  std::string name = "experiment";
  GameSpec game;
  std::vector<ProcedureSpec> procedures;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
};

struct ProcedureOutcome {
  std::string name;
  std::string kind;
  bool ok = false;
  std::string error;
  std::vector<std::string> files;  // relative to the output directory
};

struct ReportBundle {
  std::vector<ProcedureOutcome> outcomes;
  std::filesystem::path manifest;

  bool all_ok() const;
};

const std::vector<std::string>& procedure_kinds();

/// Parses a full experiment config; see docs/config_schema.json.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& cfg);

/// Runs every procedure in order. A failing procedure is recorded and the
/// batch continues. Writes manifest.json listing each file with its SHA-256.
ReportBundle run(const ExperimentConfig& cfg);

const std::vector<std::string>& preset_names();
ExperimentConfig preset(std::string_view name);

std::string sha256_hex(std::string_view data);

}  // namespace impact
