#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "zer/model.hpp"
#include "zer/rg.hpp"

namespace zer {

// configuration problems map to exit code 2 in the CLI
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> artifacts = {
      "trace", "band_structure", "correlations", "level_decomposition",
      "momentum_occupation", "bounds"};
};

struct RunConfig {
  ModelSpec model;
  RGConfig rg;
  OutputConfig outputs;
  long seed = 0;  // echoed for reproducibility; the pipeline never draws
};

extern const std::vector<std::string> known_artifacts;

RunConfig parse_config_json(const nlohmann::ordered_json& j);
RunConfig parse_config(const std::string& path);

// echo with all defaults applied; parsing the echo reproduces the RunConfig
nlohmann::ordered_json config_to_json(const RunConfig& config);

// ssh | nn | extended
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace zer
