#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "exciton/config.hpp"
#include "exciton/sweeps.hpp"

namespace exciton {

inline constexpr const char* kVersion = "1.0.0";

std::vector<std::string> experiment_names();

/// Built-in defaults for an experiment; every key the experiment understands
/// is present, so a user config only needs the overrides.
Config default_config(const std::string& experiment);

/// Full config assembly: preset defaults, then file overrides, then --set
/// overrides. Rejects unknown keys for the experiment.
Config resolve_config(const std::string& experiment, const Config& overrides);

/// Checks every invariant (ranges, vector lengths, geometry positivity)
/// without running. Returns one message per violation; empty means valid.
std::vector<std::string> validate_config(const std::string& experiment,
                                         const Config& config);

/// Physical objects assembled from a validated config.
SweepConfig build_sweep_config(const Config& config);

struct RunResult {
  std::vector<std::string> files;  ///< emitted CSVs, relative to out_dir
  std::string manifest;            ///< manifest path
  double wall_seconds = 0.0;
};

/// Executes one experiment and writes its CSVs plus a manifest into out_dir.
/// The manifest embeds the fully resolved config and is itself a valid
/// config file for re-running.
RunResult run_experiment(const std::string& experiment, const Config& config,
                         const std::string& out_dir, int workers, bool quiet,
                         std::ostream& log);

}  // namespace exciton
