#include <CLI11.hpp>
#include <chrono>
#include <iostream>
#include <sstream>

#include "zer/artifacts.hpp"
#include "zer/config.hpp"
#include "zer/rg.hpp"

namespace {

// 0 success, 2 configuration problem, 3 numerical or I/O failure during a run
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<std::string> split_csv(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int do_run(const std::string& config_path, const std::string& preset,
           const std::string& out_dir, const std::string& artifacts) {
  zer::RunConfig rc;
  try {
    if (!config_path.empty() && !preset.empty()) {
      std::cerr << "error: give either a config file or --preset, not both\n";
      return kExitConfig;
    }
    if (!config_path.empty()) {
      rc = zer::parse_config(config_path);
    } else if (!preset.empty()) {
      rc = zer::preset_config(preset);
    } else {
      std::cerr << "error: a config file or --preset is required\n";
      return kExitConfig;
    }
    if (!out_dir.empty()) rc.outputs.directory = out_dir;
    if (!artifacts.empty()) {
      rc.outputs.artifacts.clear();
      for (const auto& a : split_csv(artifacts)) rc.outputs.artifacts.push_back(a);
      // revalidate through the echo so unknown names are caught here
      rc = zer::parse_config_json(zer::config_to_json(rc));
    }
    zer::prepare_output_directory(rc.outputs.directory);
  } catch (const zer::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const zer::RGTrace trace = zer::run_zer(rc.model, rc.rg);
    zer::write_artifacts(trace, rc);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << "termination: " << trace.termination_reason << "\n"
              << "core modes: " << trace.core.size() << "\n"
              << "nontrivial steps: " << trace.nontrivial_steps << "\n"
              << "accepted steps: " << trace.accepted_steps << "\n"
              << "outputs: " << rc.outputs.directory << " (" << seconds
              << " s)\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: run failed: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int do_validate(const std::string& config_path) {
  try {
    const zer::RunConfig rc = zer::parse_config(config_path);
    std::cout << zer::config_to_json(rc).dump(2) << "\n";
    return 0;
  } catch (const zer::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zer: entanglement renormalization for 1D free-fermion ground states"};
  app.require_subcommand(1);

  std::string run_config, run_preset, run_out, run_artifacts;
  auto* run = app.add_subcommand("run", "execute a renormalization run");
  run->add_option("config", run_config, "JSON run configuration");
  run->add_option("--preset", run_preset, "built-in configuration")
      ->check(CLI::IsMember(zer::preset_names()));
  run->add_option("--out", run_out, "override the output directory");
  run->add_option("--artifacts", run_artifacts,
                  "comma-separated list of artifacts to write");

  std::string validate_config;
  auto* validate =
      app.add_subcommand("validate", "check a configuration and echo it");
  validate->add_option("config", validate_config, "JSON run configuration")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (run->parsed())
    return do_run(run_config, run_preset, run_out, run_artifacts);
  return do_validate(validate_config);
}
