#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>

#include "crsim/admission.hpp"
#include "crsim/analytic.hpp"
#include "crsim/csv.hpp"
#include "crsim/errors.hpp"
#include "crsim/mc_engine.hpp"
#include "crsim/parallel.hpp"

namespace crsim::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<double> kGammaGrid = {2.0, 3.0, 3.5, 4.0};
const std::vector<double> kCdfSigmaGrid = {4.0, 8.0, 12.0};
const std::vector<double> kSigmaGrid = {4.0, 6.0, 8.0, 12.0};
const std::vector<double> kRemGammaGrid = {3.0, 3.5, 4.0};
const std::vector<double> kTargetSinrGrid = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
const std::vector<double> kRcRatioGrid = {10.0, 20.0, 50.0};
constexpr double kRcSweepGamma = 3.5;
constexpr double kRcSweepSigmaDb = 8.0;
constexpr int kCdfPoints = 101;

class Manifest {
 public:
  Manifest(std::string_view subcommand, ScenarioConfig resolved)
      : subcommand_(subcommand), config_(std::move(resolved)) {}

  void note(std::string line) { notes_.push_back(std::move(line)); }

  fs::path write(const fs::path& dir) const {
    const fs::path path = dir / "manifest.txt";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path.string());
    out << "# tool_version: " << kToolVersion << '\n';
    out << "# subcommand: " << subcommand_ << '\n';
    for (const auto& n : notes_) out << "# " << n << '\n';
    out << to_text(config_);
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
    return path;
  }

 private:
  std::string subcommand_;
  ScenarioConfig config_;
  std::vector<std::string> notes_;
};

std::string join(const std::vector<double>& values) {
  std::string out;
  for (const double v : values) {
    if (!out.empty()) out += ' ';
    out += format_double(v);
  }
  return out;
}

std::ostream& log(const RunOptions& o) {
  static std::ostream discard(nullptr);
  return o.quiet ? discard : std::cout;
}

std::vector<fs::path> run_cdf(const RunOptions& o) {
  ScenarioConfig cfg = o.config;
  const double rc = cfg.Rc_m.value_or(cfg.R_m);
  cfg.Rc_m = rc;
  const std::uint64_t samples = cfg.replications.value_or(kCdfSamples);

  const fs::path path = o.out_dir / "cdf_compare.csv";
  CsvWriter csv(path, "cdf_compare",
                {"gamma", "sigma_dB", "x_dB", "F_analytic", "F_empirical", "ks", "samples"});
  for (const double gamma : kGammaGrid) {
    for (const double sigma : kCdfSigmaGrid) {
      const Scenario s = make_scenario(cfg, rc, gamma, sigma);
      const Annulus annulus = s.geom.annulus();
      const double scale = s.power.cr_scale;
      const EmpiricalCdf empirical(sample_single_interferers(s.env, annulus, scale, s.seeds,
                                                             samples, o.workers));
      const auto analytic = [&](double x) {
        return single_interferer_cdf(x, s.env, annulus, scale);
      };
      const double ks = ks_distance(empirical, analytic);
      log(o) << "cdf gamma=" << gamma << " sigma_dB=" << sigma << " ks=" << ks << '\n';

      const double lo = linear_to_db(empirical.quantile(0.001));
      const double hi = linear_to_db(empirical.quantile(0.999));
      for (int i = 0; i < kCdfPoints; ++i) {
        const double x_db = lo + (hi - lo) * i / (kCdfPoints - 1);
        const double x = db_to_linear(x_db);
        csv.row() << gamma << sigma << x_db << analytic(x) << empirical(x) << ks << samples;
      }
    }
  }
  csv.close();

  Manifest m("cdf", cfg);
  m.note("preset: cdf-compare");
  m.note("grid gamma: " + join(kGammaGrid));
  m.note("grid sigma_dB: " + join(kCdfSigmaGrid));
  m.note("samples per grid point: " + std::to_string(samples));
  return {path, m.write(o.out_dir)};
}

std::vector<fs::path> run_moments(const RunOptions& o) {
  ScenarioConfig cfg = o.config;
  const double rc = cfg.Rc_m.value_or(cfg.R_m);
  cfg.Rc_m = rc;
  const Scenario s = make_scenario(cfg, rc);
  const Annulus annulus = s.geom.annulus();
  const double scale = s.power.cr_scale;
  const double gamma = s.env.gamma();

  const MomentSet m = make_moment_set(s.env, annulus, scale);
  const FwFit fit = fenton_wilkinson_fit(m);
  std::vector<std::pair<std::string, double>> rows = {
      {"pu_scale", s.power.pu_scale},
      {"cr_scale", scale},
      {"sigma_x", s.env.sigma_x()},
      {"m1", m.m1},
      {"m2", m.m2},
      {"m3", m.m3},
      {"skewness_I", m.sk},
      {"fw_mu_z", fit.mu_z},
      {"fw_sigma_z2", fit.sigma_z2},
      {"fw_third_moment", fit.third_moment},
      {"skewness_Y", fit.skewness()},
      {"ratio_exact", skewness_ratio_exact(gamma, annulus)},
  };
  for (int k = 0; k <= 3; ++k) {
    rows.emplace_back("E_r_pow_minus_" + std::to_string(k) + "gamma",
                      distance_moment(k, gamma, annulus));
  }
  for (int k = 1; k <= 3; ++k) {
    if (k * gamma > 2.0) {
      rows.emplace_back("E_r_pow_minus_" + std::to_string(k) + "gamma_approx",
                        distance_moment_approx(k, gamma, annulus.outer));
    }
  }
  if (gamma > 2.0) rows.emplace_back("ratio_asymptotic", skewness_ratio_asymptotic(gamma, annulus.outer));

  const fs::path path = o.out_dir / "moments.csv";
  CsvWriter csv(path, "moments", {"quantity", "value"});
  for (const auto& [name, value] : rows) {
    csv.row() << name << value;
    log(o) << name << " = " << format_double(value) << '\n';
  }
  csv.close();

  Manifest manifest("moments", cfg);
  return {path, manifest.write(o.out_dir)};
}

std::vector<fs::path> run_skewness(const RunOptions& o) {
  ScenarioConfig cfg = o.config;
  const double rc = cfg.Rc_m.value_or(cfg.R_m);
  cfg.Rc_m = rc;
  const fs::path path = o.out_dir / "skewness.csv";
  CsvWriter csv(path, "skewness",
                {"gamma", "sigma_dB", "m1", "m2", "m3", "sk_I", "sk_Y", "EY3_over_m3",
                 "ratio_exact", "ratio_asymptotic", "rel_err"});
  for (const double gamma : kGammaGrid) {
    for (const double sigma : kSigmaGrid) {
      const Scenario s = make_scenario(cfg, rc, gamma, sigma);
      const Annulus annulus = s.geom.annulus();
      const MomentSet m = make_moment_set(s.env, annulus, s.power.cr_scale);
      const FwFit fit = fenton_wilkinson_fit(m);
      const double exact = skewness_ratio_exact(gamma, annulus);
      const double asym = gamma > 2.0 ? skewness_ratio_asymptotic(gamma, annulus.outer)
                                      : std::numeric_limits<double>::quiet_NaN();
      csv.row() << gamma << sigma << m.m1 << m.m2 << m.m3 << m.sk << fit.skewness()
                << fit.third_moment / m.m3 << exact << asym << (asym - exact) / exact;
    }
  }
  csv.close();
  Manifest manifest("skewness", cfg);
  manifest.note("preset: skewness-report");
  manifest.note("grid gamma: " + join(kGammaGrid));
  manifest.note("grid sigma_dB: " + join(kSigmaGrid));
  return {path, manifest.write(o.out_dir)};
}

std::vector<fs::path> run_calibrate(const RunOptions& o) {
  ScenarioConfig cfg = o.config;
  const double rc = cfg.Rc_m.value_or(cfg.R_m);
  cfg.Rc_m = rc;
  const std::uint64_t reps = cfg.replications.value_or(kReliabilityReplications);
  const Scenario s = make_scenario(cfg, rc);
  const double threshold = s.power.noise * db_to_linear(kCalibrationSnrDb);

  const auto pu = estimate_reliability(
      s, [](const Realization& r) { return AdmissionResult{{}, 0.0, r.cr_distances.size()}; },
      [&](const Realization& r, const AdmissionResult&) {
        return meets_sinr(r.pu_signal, 0.0, s.power.noise, db_to_linear(kCalibrationSnrDb));
      },
      reps, o.workers);
  const auto cr_signals = sample_single_interferers(s.env, s.geom.cr_annulus(), s.power.cr_scale,
                                                    s.seeds, reps, o.workers);
  const auto cr_ok = static_cast<std::uint64_t>(std::count_if(
      cr_signals.begin(), cr_signals.end(), [&](double v) { return v >= threshold; }));
  const auto cr = ReliabilityEstimate::from_counts(cr_ok, reps);

  const fs::path path = o.out_dir / "reliability.csv";
  CsvWriter csv(path, "reliability",
                {"link", "gamma", "sigma_dB", "radius_m", "threshold_dB", "scale", "estimate",
                 "ci_halfwidth", "replications"});
  csv.row() << "primary" << s.env.gamma() << s.env.sigma_db() << s.geom.outer()
            << kCalibrationSnrDb << s.power.pu_scale << pu.probability << pu.ci_halfwidth
            << pu.replications;
  csv.row() << "cognitive" << s.env.gamma() << s.env.sigma_db() << s.geom.cr_coverage()
            << kCalibrationSnrDb << s.power.cr_scale << cr.probability << cr.ci_halfwidth
            << cr.replications;
  csv.close();
  log(o) << "pu_scale=" << format_double(s.power.pu_scale) << " reliability=" << pu.probability
         << " +/- " << pu.ci_halfwidth << '\n';
  log(o) << "cr_scale=" << format_double(s.power.cr_scale) << " reliability=" << cr.probability
         << " +/- " << cr.ci_halfwidth << '\n';

  Manifest manifest("calibrate", cfg);
  manifest.note("replications: " + std::to_string(reps));
  return {path, manifest.write(o.out_dir)};
}

void write_pez_rows(CsvWriter& csv, const Scenario& s, double density_km2,
                    const std::vector<PezSolution>& sols, double rc, const RunOptions& o) {
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const auto& sol = sols[i];
    csv.row() << s.env.sigma_db() << s.env.gamma() << density_km2 << kTargetSinrGrid[i]
              << sol.radius_m << sol.reliability << rc << s.geom.outer() / rc
              << to_string(sol.status);
    log(o) << "pez sigma_dB=" << s.env.sigma_db() << " Rc=" << rc
           << " target=" << kTargetSinrGrid[i] << " Re=" << sol.radius_m << '\n';
  }
}

std::vector<fs::path> run_pez(const RunOptions& o) {
  ScenarioConfig cfg = o.config;
  const double rc = cfg.Rc_m.value_or(kPezDefaultRcM);
  cfg.Rc_m = rc;
  const std::uint64_t reps = cfg.replications.value_or(kReliabilityReplications);
  const std::initializer_list<std::string_view> cols = {
      "sigma_dB", "gamma", "density_per_km2", "target_sinr_dB", "Re_m",
      "reliability_at_Re", "Rc_m", "R_over_Rc", "status"};

  const fs::path sigma_path = o.out_dir / "pez.csv";
  CsvWriter sigma_csv(sigma_path, "pez", cols);
  for (const double sigma : kSigmaGrid) {
    const Scenario s = make_scenario(cfg, rc, cfg.gamma, sigma);
    write_pez_rows(sigma_csv, s, cfg.density_per_km2,
                   solve_pez_radii(s, kTargetSinrGrid, kPezReliabilityTarget, reps, o.workers),
                   rc, o);
  }
  sigma_csv.close();

  const fs::path rc_path = o.out_dir / "pez_rc.csv";
  CsvWriter rc_csv(rc_path, "pez", cols);
  for (const double ratio : kRcRatioGrid) {
    const double sweep_rc = cfg.R_m / ratio;
    const Scenario s = make_scenario(cfg, sweep_rc, kRcSweepGamma, kRcSweepSigmaDb);
    write_pez_rows(rc_csv, s, cfg.density_per_km2,
                   solve_pez_radii(s, kTargetSinrGrid, kPezReliabilityTarget, reps, o.workers),
                   sweep_rc, o);
  }
  rc_csv.close();

  Manifest manifest("pez", cfg);
  manifest.note("preset: pez-sweep");
  manifest.note("grid sigma_dB: " + join(kSigmaGrid));
  manifest.note("grid target_sinr_dB: " + join(kTargetSinrGrid));
  manifest.note("R/Rc sweep (gamma 3.5, sigma_dB 8): " + join(kRcRatioGrid));
  manifest.note("reliability target: " + format_double(kPezReliabilityTarget));
  manifest.note("replications: " + std::to_string(reps));
  return {sigma_path, rc_path, manifest.write(o.out_dir)};
}

struct CountRow {
  AdmissionResult centralized;
  AdmissionResult decentralized;
};

std::vector<fs::path> run_rem(const RunOptions& o) {
  ScenarioConfig cfg = o.config;
  const double rc = cfg.Rc_m.value_or(kAccessDefaultRcM);
  cfg.Rc_m = rc;
  const std::uint64_t reps = cfg.replications.value_or(kCountReplications);

  std::vector<std::pair<double, double>> grid;
  for (const double g : kRemGammaGrid) grid.emplace_back(g, kRcSweepSigmaDb);
  for (const double sg : kSigmaGrid) grid.emplace_back(kRcSweepGamma, sg);

  const fs::path path = o.out_dir / "rem_counts.csv";
  CsvWriter csv(path, "rem_counts",
                {"scheme", "replication", "n_active", "n_admitted", "pct_admitted", "gamma",
                 "sigma_dB", "sweep"});
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const auto [gamma, sigma] = grid[gi];
    const std::string_view sweep = gi < kRemGammaGrid.size() ? "gamma_sweep" : "sigma_sweep";
    const Scenario s = make_scenario(cfg, rc, gamma, sigma);
    const double budget = interference_budget(cfg.delta_dB, s.power.noise);
    const auto rows = run_replications<CountRow>(reps, o.workers, [&](std::uint64_t rep) {
      const Realization r = sample_realization(s, rep);
      return CountRow{rem_centralized(r.cr_interferences, budget),
                      rem_decentralized(r.cr_interferences, budget)};
    });
    for (std::uint64_t rep = 0; rep < reps; ++rep) {
      for (const auto* res : {&rows[rep].centralized, &rows[rep].decentralized}) {
        const auto scheme = res == &rows[rep].centralized ? "centralized" : "decentralized";
        csv.row() << scheme << rep << static_cast<std::uint64_t>(res->n_active)
                  << static_cast<std::uint64_t>(res->n_admitted()) << res->pct_admitted()
                  << gamma << sigma << sweep;
      }
    }
    log(o) << "rem gamma=" << gamma << " sigma_dB=" << sigma << " done\n";
  }
  csv.close();

  Manifest manifest("rem", cfg);
  manifest.note("preset: rem-cdf");
  manifest.note("gamma sweep at sigma_dB 8: " + join(kRemGammaGrid));
  manifest.note("sigma_dB sweep at gamma 3.5: " + join(kSigmaGrid));
  manifest.note("replications: " + std::to_string(reps));
  return {path, manifest.write(o.out_dir)};
}

struct AccessRow {
  AdmissionResult centralized;
  AdmissionResult decentralized;
  AdmissionResult pez;
};

std::vector<fs::path> run_access(const RunOptions& o) {
  ScenarioConfig cfg = o.config;
  const double rc = cfg.Rc_m.value_or(kAccessDefaultRcM);
  cfg.Rc_m = rc;
  const std::uint64_t count_reps = cfg.replications.value_or(kCountReplications);
  const std::uint64_t solve_reps = cfg.replications.value_or(kReliabilityReplications);

  const Scenario s = make_scenario(cfg, rc);
  const double budget = interference_budget(cfg.delta_dB, s.power.noise);
  const double matched_target = kCalibrationSnrDb - cfg.delta_dB;
  const PezSolution pez =
      solve_pez_radius(s, matched_target, kPezReliabilityTarget, solve_reps, o.workers);

  const auto rows = run_replications<AccessRow>(count_reps, o.workers, [&](std::uint64_t rep) {
    const Realization r = sample_realization(s, rep);
    return AccessRow{rem_centralized(r.cr_interferences, budget),
                     rem_decentralized(r.cr_interferences, budget),
                     pez_filter(r, pez.radius_m)};
  });

  const fs::path path = o.out_dir / "access.csv";
  CsvWriter csv(path, "rem_counts",
                {"scheme", "replication", "n_active", "n_admitted", "pct_admitted"});
  std::map<std::string_view, std::vector<double>> pct;
  for (std::uint64_t rep = 0; rep < count_reps; ++rep) {
    const std::pair<std::string_view, const AdmissionResult*> schemes[] = {
        {"centralized", &rows[rep].centralized},
        {"decentralized", &rows[rep].decentralized},
        {"pez", &rows[rep].pez}};
    for (const auto& [name, res] : schemes) {
      csv.row() << name << rep << static_cast<std::uint64_t>(res->n_active)
                << static_cast<std::uint64_t>(res->n_admitted()) << res->pct_admitted();
      pct[name].push_back(res->pct_admitted());
    }
  }
  csv.close();

  const fs::path summary_path = o.out_dir / "access_summary.csv";
  CsvWriter summary(summary_path, "access_summary",
                    {"scheme", "mean_pct", "std_err", "replications", "Re_m", "Rc_m",
                     "density_per_km2", "delta_dB"});
  for (const std::string_view name : {"centralized", "decentralized", "pez"}) {
    const auto& v = pct[name];
    double mean = 0.0;
    for (const double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    const double n = static_cast<double>(v.size());
    const double se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    summary.row() << name << mean << se << count_reps << pez.radius_m << rc
                  << cfg.density_per_km2 << cfg.delta_dB;
    log(o) << name << " mean_pct=" << mean << " se=" << se << '\n';
  }
  summary.close();

  Manifest manifest("access-compare", cfg);
  manifest.note("pez matched target_sinr_dB: " + format_double(matched_target) +
                " (Re_m " + format_double(pez.radius_m) + ")");
  manifest.note("replications: counts " + std::to_string(count_reps) + ", pez solve " +
                std::to_string(solve_reps));
  return {path, summary_path, manifest.write(o.out_dir)};
}

using Runner = std::function<std::vector<fs::path>(const RunOptions&)>;

const std::map<std::string, Runner, std::less<>>& runners() {
  static const std::map<std::string, Runner, std::less<>> table = {
      {"cdf", run_cdf},         {"moments", run_moments}, {"skewness", run_skewness},
      {"calibrate", run_calibrate}, {"pez", run_pez},     {"rem", run_rem},
      {"access-compare", run_access},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : runners()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<fs::path> run_experiment(std::string_view subcommand, const RunOptions& options) {
  const auto it = runners().find(subcommand);
  if (it == runners().end()) {
    throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
  }
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + options.out_dir.string());
  return it->second(options);
}

int exit_code_for_current_exception(std::string_view context) {
  try {
    throw;
  } catch (const ConfigError& e) {
    std::cerr << context << ": config error: " << e.what() << '\n';
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << context << ": convergence failure: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << context << ": I/O error: " << e.what() << '\n';
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << context << ": I/O error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << context << ": invalid parameter: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << context << ": error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace crsim::cli
