#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "crsim/admission.hpp"
#include "crsim/scenario.hpp"

namespace crsim {

/// Sorted sample with right-continuous step CDF.
class EmpiricalCdf {
 public:
  /// Throws std::invalid_argument on an empty sample.
  explicit EmpiricalCdf(std::vector<double> samples);

  /// #{x_i <= x} / n
  double operator()(double x) const;
  /// #{x_i < x} / n
  double left_limit(double x) const;

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  /// Sample quantile with the inverse-CDF (lower) convention.
  double quantile(double p) const;

 private:
  std::vector<double> values_;
};

/// sup |F_n - F| over the sample points, checking both sides of each step.
double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& cdf);

/// Sum of I_i over the CRs whose mask entry is set; std::invalid_argument on
/// a length mismatch.
double aggregate_interference(const Realization& realization, const std::vector<bool>& mask);
double aggregate_interference(const Realization& realization,
                              std::span<const std::size_t> indices);

struct ReliabilityEstimate {
  double probability = 0.0;
  std::uint64_t replications = 0;
  double ci_halfwidth = 0.0;  ///< 1.96 sqrt(p (1 - p) / n)

  static ReliabilityEstimate from_counts(std::uint64_t successes, std::uint64_t replications);
};

using AdmissionRule = std::function<AdmissionResult(const Realization&)>;
using EventPredicate = std::function<bool(const Realization&, const AdmissionResult&)>;

/// Fraction of replications 0..n-1 where `event` holds after applying `rule`.
ReliabilityEstimate estimate_reliability(const Scenario& scenario, const AdmissionRule& rule,
                                         const EventPredicate& event,
                                         std::uint64_t replications, unsigned workers);

/// Convenience: SINR >= target_sinr_db under `policy`.
ReliabilityEstimate estimate_sinr_reliability(const Scenario& scenario,
                                              const AdmissionPolicy& policy,
                                              double target_sinr_db,
                                              std::uint64_t replications, unsigned workers);

/// `count` i.i.d. single-interferer powers scale * e^X * r^-gamma. Drawn in
/// fixed-size blocks, each from its own stream, so output is independent of
/// the worker count.
std::vector<double> sample_single_interferers(const PropagationEnv& env, const Annulus& annulus,
                                              double scale, const SeedSpec& seeds,
                                              std::uint64_t count, unsigned workers);

}  // namespace crsim
