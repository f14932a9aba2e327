#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exciton/experiments.hpp"
#include "exciton/grid.hpp"

namespace {

constexpr int kExitBadConfig = 2;
constexpr int kExitNumerical = 3;

exciton::Config collect_overrides(const std::string& config_path,
                                  const std::vector<std::string>& sets) {
  exciton::Config overrides;
  if (!config_path.empty())
    overrides = exciton::Config::parse_file(config_path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw exciton::ConfigError("--set expects key=value, got '" + kv + "'");
    overrides.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exciton - excitation transfer through mechanically moving chains"};
  app.require_subcommand(1);

  std::string experiment, config_path, out_dir = "out";
  std::vector<std::string> sets;
  int workers = 0;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "run an experiment preset");
  run->add_option("experiment", experiment, "experiment name")->required();
  run->add_option("--config", config_path, "config file overriding the preset");
  run->add_option("--set", sets, "key=value override (repeatable)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", workers,
                  "worker threads (default: EXCITON_WORKERS or hardware)");
  run->add_flag("--quiet", quiet, "suppress progress output");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a config without running");
  validate->add_option("config", validate_path, "config file")->required();

  auto* list = app.add_subcommand("list", "list experiment presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : exciton::experiment_names())
        std::cout << name << "\n";
      return 0;
    }
    if (validate->parsed()) {
      const auto cfg = exciton::Config::parse_file(validate_path);
      if (!cfg.has("experiment")) {
        std::cerr << "config has no 'experiment' key\n";
        return kExitBadConfig;
      }
      const std::string name = cfg.get_str("experiment");
      const auto resolved = exciton::resolve_config(name, cfg);
      const auto problems = exciton::validate_config(name, resolved);
      if (problems.empty()) {
        std::cout << "ok\n";
        return 0;
      }
      for (const auto& p : problems) std::cerr << p << "\n";
      return kExitBadConfig;
    }
    // run
    const auto overrides = collect_overrides(config_path, sets);
    const auto config = exciton::resolve_config(experiment, overrides);
    exciton::run_experiment(experiment, config, out_dir, workers, quiet,
                            std::cout);
    return 0;
  } catch (const exciton::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const exciton::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
