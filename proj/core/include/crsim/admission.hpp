#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "crsim/scenario.hpp"

namespace crsim {

enum class AdmissionKind { kRemCentralized, kRemDecentralized, kPez };

std::string_view to_string(AdmissionKind kind);

/// Which CRs may transmit. REM kinds use delta_db; PEZ uses exclusion_radius_m.
struct AdmissionPolicy {
  AdmissionKind kind = AdmissionKind::kRemCentralized;
  double delta_db = 0.0;
  double exclusion_radius_m = 0.0;
  double target_sinr_db = kCalibrationSnrDb;

  static AdmissionPolicy rem_centralized(double delta_db);
  static AdmissionPolicy rem_decentralized(double delta_db);
  static AdmissionPolicy pez(double exclusion_radius_m, double target_sinr_db);

  /// Throws std::invalid_argument on delta_db < 0 or R_e outside [R0, R].
  void validate(const Geometry& geom) const;
};

/// The CRs granted access in one realization. `admitted` holds ascending
/// zero-based indices into the realization's CR lists.
struct AdmissionResult {
  std::vector<std::size_t> admitted;
  double aggregate = 0.0;
  std::size_t n_active = 0;

  std::size_t n_admitted() const { return admitted.size(); }
  /// 100 N / N_CR; zero when no CR was active.
  double pct_admitted() const;
};

/// Largest aggregate interference keeping the SNR loss within delta_db:
/// noise * (10^(delta/10) - 1).
double interference_budget(double delta_db, double noise);

/// Admits the longest prefix of the ascending (stable) ordering whose sum
/// stays within budget. This is the maximum-cardinality feasible subset.
AdmissionResult rem_centralized(std::span<const double> interferences, double budget);

/// First-come-first-served: accepts each CR in order if it still fits.
AdmissionResult rem_decentralized(std::span<const double> interferences, double budget);

/// Admits exactly the CRs at distance >= exclusion_radius_m.
AdmissionResult pez_filter(const Realization& realization, double exclusion_radius_m);

AdmissionResult admit(const AdmissionPolicy& policy, const Realization& realization,
                      double noise);

/// S / (N0 + I) >= threshold, evaluated as S >= threshold * (N0 + I).
inline bool meets_sinr(double signal, double interference, double noise, double threshold) {
  return signal >= threshold * (noise + interference);
}

/// The PU link passes under an exclusion radius R_e iff R_e > this value.
/// Returns -inf when all CRs may transmit and +inf when even silence fails.
double pez_critical_radius(const Realization& realization, double noise, double threshold);
/// Same, for several linear SINR thresholds sharing one distance ordering.
std::vector<double> pez_critical_radii(const Realization& realization, double noise,
                                       std::span<const double> thresholds);

enum class PezStatus {
  kInterior,
  kNoExclusionNeeded,  ///< R0 already meets the target
  kFullExclusionFails  ///< even R_e = R misses the target; radius reported as R
};

std::string_view to_string(PezStatus status);

struct PezSolution {
  double radius_m = 0.0;
  double reliability = 0.0;  ///< estimated reliability at radius_m
  PezStatus status = PezStatus::kInterior;
  std::uint64_t replications = 0;
};

/// PEZ reliability as a function of R_e over one frozen set of replications
/// (common random numbers). Nondecreasing in R_e by construction.
class PezReliabilityCurve {
 public:
  PezReliabilityCurve(const Scenario& scenario, double target_sinr_db,
                      std::uint64_t replications, unsigned workers);
  /// Per-replication critical radii; need not be sorted.
  explicit PezReliabilityCurve(std::vector<double> critical_radii);

  /// One curve per target, all evaluated on the same replications.
  static std::vector<PezReliabilityCurve> for_targets(const Scenario& scenario,
                                                      std::span<const double> target_sinr_db,
                                                      std::uint64_t replications,
                                                      unsigned workers);

  double operator()(double exclusion_radius_m) const;
  std::uint64_t replications() const { return critical_.size(); }

 private:
  std::vector<double> critical_;  // sorted ascending
};

/// Bisection over [R0, R] on a precomputed curve.
PezSolution solve_pez_radius(const PezReliabilityCurve& curve, const Geometry& geom,
                             double reliability_target);

/// Smallest R_e (to 1 m) with P(SINR >= target) >= reliability_target, by
/// bisection over [R0, R] on a common-random-numbers reliability curve.
/// Throws std::invalid_argument for reliability_target outside (0, 1) or a
/// target above the calibration threshold, ConvergenceError if bisection stalls.
PezSolution solve_pez_radius(const Scenario& scenario, double target_sinr_db,
                             double reliability_target, std::uint64_t replications,
                             unsigned workers);

/// solve_pez_radius for each target, sharing one set of replications.
std::vector<PezSolution> solve_pez_radii(const Scenario& scenario,
                                         std::span<const double> target_sinr_db,
                                         double reliability_target,
                                         std::uint64_t replications, unsigned workers);

}  // namespace crsim
