#include "crsim/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "crsim/analytic.hpp"

namespace crsim {

PropagationEnv::PropagationEnv(double gamma, double sigma_db)
    : gamma_(gamma), sigma_db_(sigma_db), sigma_x_(kBeta * sigma_db) {
  if (!(gamma >= 2.0 && gamma <= 6.0)) {
    throw std::invalid_argument("path-loss exponent must lie in [2, 6], got " +
                                std::to_string(gamma));
  }
  if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db)) {
    throw std::invalid_argument("shadowing spread must be >= 0 dB");
  }
}

Geometry::Geometry(double outer_m, double inner_m, double cr_coverage_m)
    : outer_(outer_m), inner_(inner_m), cr_coverage_(cr_coverage_m) {
  if (!(inner_m > 0.0 && inner_m < outer_m) || !std::isfinite(outer_m)) {
    throw std::invalid_argument("annulus requires 0 < R0 < R");
  }
  if (!(cr_coverage_m > 0.0 && cr_coverage_m <= outer_m)) {
    throw std::invalid_argument("CR coverage radius requires 0 < Rc <= R");
  }
}

Population::Population(double density_per_m2, double activity_p, const Geometry& geom)
    : density_per_m2_(density_per_m2), activity_p_(activity_p) {
  if (!(density_per_m2 >= 0.0) || !std::isfinite(density_per_m2)) {
    throw std::invalid_argument("CR density must be >= 0");
  }
  if (!(activity_p >= 0.0 && activity_p <= 1.0)) {
    throw std::invalid_argument("activity factor must lie in [0, 1]");
  }
  max_count_ = static_cast<std::int64_t>(
      std::floor(std::numbers::pi * geom.outer() * geom.outer() * density_per_m2));
}

void PowerLevels::validate() const {
  if (!(noise > 0.0) || !(pu_scale > 0.0) || !(cr_scale > 0.0) || !std::isfinite(noise) ||
      !std::isfinite(pu_scale) || !std::isfinite(cr_scale)) {
    throw std::invalid_argument("noise and transmit scales must be finite and positive");
  }
}

Scenario make_calibrated_scenario(const PropagationEnv& env, const Geometry& geom,
                                  const Population& pop, double noise, SeedSpec seeds) {
  PowerLevels power;
  power.noise = noise;
  power.pu_scale =
      calibrate_power(env, geom.annulus(), kCalibrationReliability, kCalibrationSnrDb, noise);
  power.cr_scale =
      calibrate_power(env, geom.cr_annulus(), kCalibrationReliability, kCalibrationSnrDb, noise);
  power.validate();
  return Scenario{env, geom, pop, power, seeds};
}

std::int64_t sample_cr_count(const Population& pop, CounterRng& rng) {
  if (pop.max_count() == 0 || pop.activity() == 0.0) return 0;
  if (pop.activity() == 1.0) return pop.max_count();
  std::binomial_distribution<std::int64_t> dist(pop.max_count(), pop.activity());
  return dist(rng);
}

double annulus_distance(const Annulus& annulus, double u) {
  const double r02 = annulus.inner * annulus.inner;
  return std::sqrt(r02 + u * annulus.area_factor());
}

double sample_annulus_distance(const Annulus& annulus, CounterRng& rng) {
  return annulus_distance(annulus, rng.uniform01());
}

double received_power(double scale, double shadow, double distance, double gamma) {
  return scale * std::exp(shadow - gamma * std::log(distance));
}

Realization sample_realization(const Scenario& scenario, std::uint64_t replication) {
  const auto& env = scenario.env;
  const Annulus annulus = scenario.geom.annulus();
  const double gamma = env.gamma();

  Realization out;
  {
    CounterRng rng = scenario.seeds.stream(StreamPurpose::kPrimaryLink, replication);
    std::normal_distribution<double> shadow(0.0, 1.0);
    out.pu_distance = sample_annulus_distance(annulus, rng);
    out.pu_shadow = env.sigma_x() * shadow(rng);
    out.pu_signal = received_power(scenario.power.pu_scale, out.pu_shadow, out.pu_distance, gamma);
  }

  CounterRng count_rng = scenario.seeds.stream(StreamPurpose::kCount, replication);
  out.n_active = sample_cr_count(scenario.pop, count_rng);
  const auto n = static_cast<std::size_t>(out.n_active);

  CounterRng place_rng = scenario.seeds.stream(StreamPurpose::kPlacement, replication);
  CounterRng shadow_rng = scenario.seeds.stream(StreamPurpose::kShadowing, replication);
  std::normal_distribution<double> shadow(0.0, 1.0);
  out.cr_distances.resize(n);
  out.cr_shadows.resize(n);
  out.cr_interferences.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.cr_distances[i] = sample_annulus_distance(annulus, place_rng);
    out.cr_shadows[i] = env.sigma_x() * shadow(shadow_rng);
    out.cr_interferences[i] = received_power(scenario.power.cr_scale, out.cr_shadows[i],
                                             out.cr_distances[i], gamma);
  }
  return out;
}

}  // namespace crsim
