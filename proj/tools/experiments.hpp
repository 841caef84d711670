#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crsim/config.hpp"

namespace crsim::cli {

inline constexpr std::string_view kToolVersion = "crsim 1.0.0";

/// Preset replication counts, used unless the config sets `replications`.
inline constexpr std::uint64_t kCdfSamples = 1'000'000;
inline constexpr std::uint64_t kReliabilityReplications = 100'000;
inline constexpr std::uint64_t kCountReplications = 10'000;

/// CR coverage radii for the exclusion-zone and admission presets when the
/// config leaves Rc_m unset.
inline constexpr double kPezDefaultRcM = 50.0;
inline constexpr double kAccessDefaultRcM = 100.0;
inline constexpr double kPezReliabilityTarget = kCalibrationReliability;

struct RunOptions {
  ScenarioConfig config;
  std::filesystem::path out_dir = ".";
  unsigned workers = 1;
  bool quiet = false;
};

/// Subcommand names accepted by run_experiment.
const std::vector<std::string>& subcommands();

/// Runs one preset, writing its CSV tables and manifest.txt into out_dir.
/// Returns the files written.
std::vector<std::filesystem::path> run_experiment(std::string_view subcommand,
                                                  const RunOptions& options);

/// Maps an in-flight exception to the CLI exit code (1 config, 2 numerical
/// convergence, 3 I/O) and prints a one-line diagnostic to stderr.
int exit_code_for_current_exception(std::string_view context);

}  // namespace crsim::cli
