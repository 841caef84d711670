#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "crsim/scenario.hpp"

namespace crsim {

/// Flat `key = value` scenario file; '#' starts a comment.
/// Every key is optional; unknown or repeated keys raise ConfigError.
struct ScenarioConfig {
  double R_m = 1000.0;
  double R0_m = 1.0;
  std::optional<double> Rc_m;  ///< unset: the experiment picks its default
  double gamma = 3.5;
  double sigma_dB = 8.0;
  double density_per_km2 = 1000.0;
  double activity_p = 0.1;
  std::uint64_t master_seed = 1;
  std::optional<std::uint64_t> replications;
  double delta_dB = 2.0;
  double target_sinr_dB = 4.0;
  double noise = 1.0;
};

ScenarioConfig parse_config(std::istream& in);
/// Throws IoError if the file cannot be opened.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Sets a single key from its textual value (same rules as the file parser).
void apply_override(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Resolved key-value text; parse_config(to_text(c)) == c.
std::string to_text(const ScenarioConfig& config);

/// Validates and calibrates. `gamma`/`sigma_dB` come from the config unless
/// the caller overrides them for a grid point. Invalid values raise ConfigError.
Scenario make_scenario(const ScenarioConfig& config, double cr_coverage_m);
Scenario make_scenario(const ScenarioConfig& config, double cr_coverage_m, double gamma,
                       double sigma_db);

}  // namespace crsim
