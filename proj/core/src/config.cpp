#include "crsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "crsim/csv.hpp"
#include "crsim/errors.hpp"

namespace crsim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + std::string(key) + "': not a finite number: '" +
                      std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("key '" + std::string(key) + "': not an unsigned integer: '" +
                      std::string(text) + "'");
  }
  return v;
}

}  // namespace

void apply_override(ScenarioConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  if (key == "R_m") {
    c.R_m = parse_double(key, value);
  } else if (key == "R0_m") {
    c.R0_m = parse_double(key, value);
  } else if (key == "Rc_m") {
    c.Rc_m = parse_double(key, value);
  } else if (key == "gamma") {
    c.gamma = parse_double(key, value);
  } else if (key == "sigma_dB") {
    c.sigma_dB = parse_double(key, value);
  } else if (key == "density_per_km2") {
    c.density_per_km2 = parse_double(key, value);
  } else if (key == "activity_p") {
    c.activity_p = parse_double(key, value);
  } else if (key == "master_seed") {
    c.master_seed = parse_uint(key, value);
  } else if (key == "replications") {
    c.replications = parse_uint(key, value);
    if (*c.replications == 0) throw ConfigError("key 'replications' must be >= 1");
  } else if (key == "delta_dB") {
    c.delta_dB = parse_double(key, value);
  } else if (key == "target_sinr_dB") {
    c.target_sinr_dB = parse_double(key, value);
  } else if (key == "noise") {
    c.noise = parse_double(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig c;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // '#' starts a comment anywhere on the line.
    const std::string_view text = trim(std::string_view(line).substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string_view key = trim(text.substr(0, eq));
    if (!seen.emplace(key).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        std::string(key) + "'");
    }
    try {
      apply_override(c, key, text.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  return parse_config(in);
}

std::string to_text(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "R_m = " << format_double(c.R_m) << '\n';
  out << "R0_m = " << format_double(c.R0_m) << '\n';
  if (c.Rc_m) out << "Rc_m = " << format_double(*c.Rc_m) << '\n';
  out << "gamma = " << format_double(c.gamma) << '\n';
  out << "sigma_dB = " << format_double(c.sigma_dB) << '\n';
  out << "density_per_km2 = " << format_double(c.density_per_km2) << '\n';
  out << "activity_p = " << format_double(c.activity_p) << '\n';
  out << "master_seed = " << c.master_seed << '\n';
  if (c.replications) out << "replications = " << *c.replications << '\n';
  out << "delta_dB = " << format_double(c.delta_dB) << '\n';
  out << "target_sinr_dB = " << format_double(c.target_sinr_dB) << '\n';
  out << "noise = " << format_double(c.noise) << '\n';
  return out.str();
}

Scenario make_scenario(const ScenarioConfig& c, double cr_coverage_m) {
  return make_scenario(c, cr_coverage_m, c.gamma, c.sigma_dB);
}

Scenario make_scenario(const ScenarioConfig& c, double cr_coverage_m, double gamma,
                       double sigma_db) {
  try {
    const PropagationEnv env(gamma, sigma_db);
    const Geometry geom(c.R_m, c.R0_m, cr_coverage_m);
    const Population pop(c.density_per_km2 * 1e-6, c.activity_p, geom);
    if (!(c.noise > 0.0)) throw std::invalid_argument("noise must be positive");
    if (!(c.delta_dB >= 0.0)) throw std::invalid_argument("delta_dB must be >= 0");
    return make_calibrated_scenario(env, geom, pop, c.noise, SeedSpec{c.master_seed});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace crsim
