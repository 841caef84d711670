#pragma once

#include <cstdint>
#include <vector>

#include "crsim/rng.hpp"
#include "crsim/units.hpp"

namespace crsim {

/// Path-loss exponent and lognormal shadowing spread.
class PropagationEnv {
 public:
  /// Throws std::invalid_argument unless gamma is in [2, 6] and sigma_db >= 0.
  PropagationEnv(double gamma, double sigma_db);

  double gamma() const { return gamma_; }
  double sigma_db() const { return sigma_db_; }
  /// Standard deviation of the natural-log shadowing exponent X.
  double sigma_x() const { return sigma_x_; }

 private:
  double gamma_;
  double sigma_db_;
  double sigma_x_;
};

/// Radial support of a uniformly placed transmitter: inner <= r <= outer.
struct Annulus {
  double inner;
  double outer;

  double area_factor() const { return outer * outer - inner * inner; }
};

/// Primary coverage annulus (R0, R) and the CR coverage radius Rc.
class Geometry {
 public:
  /// Throws std::invalid_argument unless 0 < R0 < R and 0 < Rc <= R.
  Geometry(double outer_m, double inner_m, double cr_coverage_m);

  double outer() const { return outer_; }
  double inner() const { return inner_; }
  double cr_coverage() const { return cr_coverage_; }

  Annulus annulus() const { return {inner_, outer_}; }
  /// Annulus used to calibrate CR transmit power. Shares R0 with the primary.
  Annulus cr_annulus() const { return {inner_, cr_coverage_}; }

 private:
  double outer_;
  double inner_;
  double cr_coverage_;
};

class Population {
 public:
  /// max_count = floor(pi R^2 density). Throws std::invalid_argument on
  /// negative density or activity outside [0, 1].
  Population(double density_per_m2, double activity_p, const Geometry& geom);

  double density_per_m2() const { return density_per_m2_; }
  double activity() const { return activity_p_; }
  std::int64_t max_count() const { return max_count_; }

 private:
  double density_per_m2_;
  double activity_p_;
  std::int64_t max_count_;
};

/// Linear power scales relative to the noise floor.
struct PowerLevels {
  double noise = 1.0;
  double pu_scale = 1.0;
  double cr_scale = 1.0;

  /// Throws std::invalid_argument unless all three are strictly positive.
  void validate() const;
};

/// Fully specified experiment: everything a replication depends on.
struct Scenario {
  PropagationEnv env;
  Geometry geom;
  Population pop;
  PowerLevels power;
  SeedSpec seeds;
};

/// Builds a scenario whose PU and CR transmit scales are calibrated so that
/// SNR >= kCalibrationSnrDb with kCalibrationReliability over the primary
/// and CR coverage annuli respectively.
Scenario make_calibrated_scenario(const PropagationEnv& env, const Geometry& geom,
                                  const Population& pop, double noise, SeedSpec seeds);

/// One Monte Carlo draw of the primary link and the active CR population.
struct Realization {
  double pu_distance = 0.0;
  double pu_shadow = 0.0;
  double pu_signal = 0.0;
  std::vector<double> cr_distances;
  std::vector<double> cr_shadows;
  std::vector<double> cr_interferences;
  std::int64_t n_active = 0;
};

/// Binomial(max_count, activity) draw.
std::int64_t sample_cr_count(const Population& pop, CounterRng& rng);

/// Inverse transform of F(r) = (r^2 - R0^2) / (R^2 - R0^2).
double annulus_distance(const Annulus& annulus, double u);
double sample_annulus_distance(const Annulus& annulus, CounterRng& rng);

/// I = scale * exp(shadow) * r^-gamma.
double received_power(double scale, double shadow, double distance, double gamma);

/// Draws replication `replication`. Pure in (scenario, replication): each
/// purpose reads its own counter stream keyed by the replication index.
Realization sample_realization(const Scenario& scenario, std::uint64_t replication);

}  // namespace crsim
