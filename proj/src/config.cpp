#include "zer/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace zer {

using json = nlohmann::ordered_json;

const std::vector<std::string> known_artifacts = {
    "trace",          "band_structure",      "correlations",
    "level_decomposition", "momentum_occupation", "bounds",
    "matrices"};

namespace {

void reject_unknown_keys(const json& j, const std::string& section,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      std::ostringstream msg;
      msg << "config: unknown key '" << item.key() << "' in " << section;
      throw ConfigError(msg.str());
    }
  }
}

const json& require(const json& j, const std::string& section,
                    const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    std::ostringstream msg;
    msg << "config: missing required field '" << key << "' in " << section;
    throw ConfigError(msg.str());
  }
  return *it;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    std::ostringstream msg;
    msg << "config: " << where << " must be an integer";
    throw ConfigError(msg.str());
  }
  return v.get<int>();
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    std::ostringstream msg;
    msg << "config: " << where << " must be a number";
    throw ConfigError(msg.str());
  }
  return v.get<double>();
}

ModelSpec parse_model(const json& j) {
  if (!j.is_object()) throw ConfigError("config: 'model' must be an object");
  reject_unknown_keys(j, "model",
                      {"cells", "orbitals_per_cell", "hoppings", "filling"});
  ModelSpec spec;
  spec.cells = get_int(require(j, "model", "cells"), "model.cells");
  spec.orbitals_per_cell = get_int(
      require(j, "model", "orbitals_per_cell"), "model.orbitals_per_cell");
  spec.filling = get_number(require(j, "model", "filling"), "model.filling");
  const json& hops = require(j, "model", "hoppings");
  if (!hops.is_array())
    throw ConfigError("config: model.hoppings must be an array");
  for (size_t i = 0; i < hops.size(); ++i) {
    const json& h = hops[i];
    std::ostringstream where;
    where << "model.hoppings[" << i << "]";
    if (!h.is_array() || (h.size() != 4 && h.size() != 5)) {
      std::ostringstream msg;
      msg << "config: " << where.str()
          << " must be [dcell, alpha, beta, re] or [dcell, alpha, beta, re, im]";
      throw ConfigError(msg.str());
    }
    Hopping hop;
    hop.dcell = get_int(h[0], where.str() + "[0]");
    hop.alpha = get_int(h[1], where.str() + "[1]");
    hop.beta = get_int(h[2], where.str() + "[2]");
    const double re = get_number(h[3], where.str() + "[3]");
    const double im = h.size() == 5 ? get_number(h[4], where.str() + "[4]") : 0.0;
    hop.t = Complex(re, im);
    spec.hoppings.push_back(hop);
  }
  return spec;
}

RGConfig parse_rg(const json& j) {
  if (!j.is_object()) throw ConfigError("config: 'rg' must be an object");
  reject_unknown_keys(
      j, "rg",
      {"epsilon_schedule", "region_width_cells", "blocking_factor",
       "delta_null", "gap_min", "max_steps", "core_size_threshold",
       "residual_abort_multiplier"});
  RGConfig rg;
  const json& sched = require(j, "rg", "epsilon_schedule");
  if (!sched.is_array() || sched.empty())
    throw ConfigError("config: rg.epsilon_schedule must be a non-empty array");
  for (size_t i = 0; i < sched.size(); ++i) {
    std::ostringstream where;
    where << "rg.epsilon_schedule[" << i << "]";
    rg.epsilon_schedule.push_back(get_number(sched[i], where.str()));
  }
  if (auto it = j.find("region_width_cells"); it != j.end())
    rg.region_width_cells = get_int(*it, "rg.region_width_cells");
  if (auto it = j.find("blocking_factor"); it != j.end())
    rg.blocking_factor = get_int(*it, "rg.blocking_factor");
  if (auto it = j.find("delta_null"); it != j.end())
    rg.delta_null = get_number(*it, "rg.delta_null");
  if (auto it = j.find("gap_min"); it != j.end())
    rg.gap_min = get_number(*it, "rg.gap_min");
  if (auto it = j.find("max_steps"); it != j.end())
    rg.max_steps = get_int(*it, "rg.max_steps");
  if (auto it = j.find("core_size_threshold"); it != j.end())
    rg.core_size_threshold = get_int(*it, "rg.core_size_threshold");
  if (auto it = j.find("residual_abort_multiplier"); it != j.end())
    rg.residual_abort_multiplier =
        get_number(*it, "rg.residual_abort_multiplier");
  return rg;
}

OutputConfig parse_outputs(const json& j) {
  if (!j.is_object())
    throw ConfigError("config: 'outputs' must be an object");
  reject_unknown_keys(j, "outputs", {"directory", "artifacts"});
  OutputConfig out;
  if (auto it = j.find("directory"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>().empty())
      throw ConfigError("config: outputs.directory must be a non-empty string");
    out.directory = it->get<std::string>();
  }
  if (auto it = j.find("artifacts"); it != j.end()) {
    if (!it->is_array())
      throw ConfigError("config: outputs.artifacts must be an array");
    out.artifacts.clear();
    for (const auto& a : *it) {
      if (!a.is_string())
        throw ConfigError("config: outputs.artifacts entries must be strings");
      const std::string name = a.get<std::string>();
      if (std::find(known_artifacts.begin(), known_artifacts.end(), name) ==
          known_artifacts.end()) {
        std::ostringstream msg;
        msg << "config: unknown artifact '" << name << "'; known:";
        for (const auto& k : known_artifacts) msg << " " << k;
        throw ConfigError(msg.str());
      }
      out.artifacts.push_back(name);
    }
  }
  return out;
}

}  // namespace

RunConfig parse_config_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(j, "the top level", {"model", "rg", "outputs", "seed"});
  RunConfig rc;
  rc.model = parse_model(require(j, "the top level", "model"));
  rc.rg = parse_rg(require(j, "the top level", "rg"));
  if (auto it = j.find("outputs"); it != j.end())
    rc.outputs = parse_outputs(*it);
  if (auto it = j.find("seed"); it != j.end())
    rc.seed = get_int(*it, "seed");
  // semantic validation shares the library checks; map them to config errors
  try {
    validate_model(rc.model);
    validate_rg_config(rc.rg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return rc;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::ostringstream msg;
    msg << "config: cannot open '" << path << "'";
    throw ConfigError(msg.str());
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << "config: '" << path << "' is not valid JSON: " << e.what();
    throw ConfigError(msg.str());
  }
  return parse_config_json(j);
}

nlohmann::ordered_json config_to_json(const RunConfig& config) {
  json hoppings = json::array();
  for (const auto& h : config.model.hoppings)
    hoppings.push_back({h.dcell, h.alpha, h.beta, h.t.real(), h.t.imag()});
  json j;
  j["model"] = {{"cells", config.model.cells},
                {"orbitals_per_cell", config.model.orbitals_per_cell},
                {"hoppings", hoppings},
                {"filling", config.model.filling}};
  j["rg"] = {
      {"epsilon_schedule", config.rg.epsilon_schedule},
      {"region_width_cells", config.rg.region_width_cells},
      {"blocking_factor", config.rg.blocking_factor},
      {"delta_null", config.rg.delta_null},
      {"gap_min", config.rg.gap_min},
      {"max_steps", config.rg.max_steps},
      {"core_size_threshold", config.rg.core_size_threshold},
      {"residual_abort_multiplier", config.rg.residual_abort_multiplier}};
  j["outputs"] = {{"directory", config.outputs.directory},
                  {"artifacts", config.outputs.artifacts}};
  j["seed"] = config.seed;
  return j;
}

namespace {
const char* preset_text(const std::string& name) {
  if (name == "ssh") {
    return R"({
  "model": {
    "cells": 729,
    "orbitals_per_cell": 2,
    "hoppings": [[0, 0, 1, -0.4], [1, 1, 0, -0.6]],
    "filling": 0.5
  },
  "rg": {
    "epsilon_schedule": [1e-5],
    "blocking_factor": 3
  },
  "outputs": {"directory": "out_ssh"}
})";
  }
  if (name == "nn") {
    return R"({
  "model": {
    "cells": 1024,
    "orbitals_per_cell": 1,
    "hoppings": [[1, 0, 0, -1.0]],
    "filling": 0.5
  },
  "rg": {
    "epsilon_schedule": [1e-4],
    "residual_abort_multiplier": 1000.0
  },
  "outputs": {"directory": "out_nn"}
})";
  }
  if (name == "extended") {
    return R"({
  "model": {
    "cells": 1024,
    "orbitals_per_cell": 1,
    "hoppings": [[1, 0, 0, -1.0], [2, 0, 0, -2.0]],
    "filling": 0.4
  },
  "rg": {
    "epsilon_schedule": [5e-4, 5e-4, 5e-4, 1e-3, 1e-3, 1e-2],
    "gap_min": 0.01
  },
  "outputs": {"directory": "out_extended"}
})";
  }
  return nullptr;
}
}  // namespace

RunConfig preset_config(const std::string& name) {
  const char* text = preset_text(name);
  if (!text) {
    std::ostringstream msg;
    msg << "config: unknown preset '" << name << "'; available: ssh nn extended";
    throw ConfigError(msg.str());
  }
  return parse_config_json(json::parse(text));
}

std::vector<std::string> preset_names() { return {"ssh", "nn", "extended"}; }

}  // namespace zer
