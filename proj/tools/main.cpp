#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crsim/config.hpp"
#include "crsim/errors.hpp"
#include "crsim/parallel.hpp"
#include "experiments.hpp"

int main(int argc, char** argv) {
  using namespace crsim;

  CLI::App app{"Aggregate cognitive-radio interference under lognormal shadowing"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  std::uint64_t replications = 0;
  std::uint64_t master_seed = 0;
  unsigned workers = default_workers();
  bool quiet = false;

  const char* descriptions[][2] = {
      {"cdf", "single-interferer CDF: closed form vs Monte Carlo (cdf_compare.csv)"},
      {"moments", "moments, lognormal fit and skewness ratio for one scenario (moments.csv)"},
      {"skewness", "skewness report over the gamma x sigma grid (skewness.csv)"},
      {"calibrate", "transmit-power calibration and its Monte Carlo check (reliability.csv)"},
      {"pez", "exclusion-zone radius sweep (pez.csv, pez_rc.csv)"},
      {"rem", "REM admitted-count distributions (rem_counts.csv)"},
      {"access-compare", "centralized vs decentralized vs PEZ access (access*.csv)"},
  };
  for (const auto& [name, description] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "scenario key = value file");
    sub->add_option("--out-dir", out_dir, "directory for CSV output and manifest.txt");
    sub->add_option("--set", overrides, "override a config key (key=value), repeatable");
    sub->add_option("--replications", replications, "Monte Carlo replications")
        ->check(CLI::PositiveNumber);
    sub->add_option("--master-seed", master_seed, "master random seed");
    sub->add_option("--workers", workers, "maximum worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  try {
    cli::RunOptions options;
    if (!config_path.empty()) options.config = load_config(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      apply_override(options.config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (sub->count("--replications") > 0) options.config.replications = replications;
    if (sub->count("--master-seed") > 0) options.config.master_seed = master_seed;
    options.out_dir = out_dir;
    options.workers = workers;
    options.quiet = quiet;

    for (const auto& path : cli::run_experiment(subcommand, options)) {
      if (!quiet) std::cout << "wrote " << path.string() << '\n';
    }
  } catch (...) {
    return cli::exit_code_for_current_exception(subcommand);
  }
  return 0;
}
