#include "crsim/admission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "crsim/errors.hpp"
#include "crsim/parallel.hpp"

namespace crsim {

std::string_view to_string(AdmissionKind kind) {
  switch (kind) {
    case AdmissionKind::kRemCentralized:
      return "centralized";
    case AdmissionKind::kRemDecentralized:
      return "decentralized";
    case AdmissionKind::kPez:
      return "pez";
  }
  return "unknown";
}

std::string_view to_string(PezStatus status) {
  switch (status) {
    case PezStatus::kInterior:
      return "interior";
    case PezStatus::kNoExclusionNeeded:
      return "no_exclusion_needed";
    case PezStatus::kFullExclusionFails:
      return "full_exclusion_fails";
  }
  return "unknown";
}

AdmissionPolicy AdmissionPolicy::rem_centralized(double delta_db) {
  return {AdmissionKind::kRemCentralized, delta_db, 0.0, kCalibrationSnrDb - delta_db};
}

AdmissionPolicy AdmissionPolicy::rem_decentralized(double delta_db) {
  return {AdmissionKind::kRemDecentralized, delta_db, 0.0, kCalibrationSnrDb - delta_db};
}

AdmissionPolicy AdmissionPolicy::pez(double exclusion_radius_m, double target_sinr_db) {
  return {AdmissionKind::kPez, 0.0, exclusion_radius_m, target_sinr_db};
}

void AdmissionPolicy::validate(const Geometry& geom) const {
  if (!(delta_db >= 0.0)) throw std::invalid_argument("interference budget must be >= 0 dB");
  if (kind == AdmissionKind::kPez &&
      !(exclusion_radius_m >= geom.inner() && exclusion_radius_m <= geom.outer())) {
    throw std::invalid_argument("exclusion radius must lie in [R0, R]");
  }
}

double AdmissionResult::pct_admitted() const {
  if (n_active == 0) return 0.0;
  return 100.0 * static_cast<double>(admitted.size()) / static_cast<double>(n_active);
}

double interference_budget(double delta_db, double noise) {
  if (!(delta_db >= 0.0)) throw std::invalid_argument("interference budget must be >= 0 dB");
  return noise * std::expm1(delta_db * kBeta);
}

AdmissionResult rem_centralized(std::span<const double> interferences, double budget) {
  std::vector<std::size_t> order(interferences.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return interferences[a] < interferences[b];
  });

  AdmissionResult out;
  out.n_active = interferences.size();
  double sum = 0.0;
  std::size_t n = 0;
  for (; n < order.size(); ++n) {
    const double next = sum + interferences[order[n]];
    if (next > budget) break;
    sum = next;
  }
  out.admitted.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(out.admitted.begin(), out.admitted.end());
  out.aggregate = sum;
  return out;
}

AdmissionResult rem_decentralized(std::span<const double> interferences, double budget) {
  AdmissionResult out;
  out.n_active = interferences.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < interferences.size(); ++i) {
    const double next = sum + interferences[i];
    if (next <= budget) {
      sum = next;
      out.admitted.push_back(i);
    }
  }
  out.aggregate = sum;
  return out;
}

AdmissionResult pez_filter(const Realization& realization, double exclusion_radius_m) {
  AdmissionResult out;
  out.n_active = realization.cr_distances.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < realization.cr_distances.size(); ++i) {
    if (realization.cr_distances[i] >= exclusion_radius_m) {
      out.admitted.push_back(i);
      sum += realization.cr_interferences[i];
    }
  }
  out.aggregate = sum;
  return out;
}

AdmissionResult admit(const AdmissionPolicy& policy, const Realization& realization,
                      double noise) {
  switch (policy.kind) {
    case AdmissionKind::kRemCentralized:
      return rem_centralized(realization.cr_interferences,
                             interference_budget(policy.delta_db, noise));
    case AdmissionKind::kRemDecentralized:
      return rem_decentralized(realization.cr_interferences,
                               interference_budget(policy.delta_db, noise));
    case AdmissionKind::kPez:
      return pez_filter(realization, policy.exclusion_radius_m);
  }
  throw std::logic_error("unknown admission kind");
}

double pez_critical_radius(const Realization& realization, double noise, double threshold) {
  return pez_critical_radii(realization, noise, std::span<const double>(&threshold, 1)).front();
}

std::vector<double> pez_critical_radii(const Realization& realization, double noise,
                                       std::span<const double> thresholds) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto& dist = realization.cr_distances;
  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist[a] > dist[b] || (dist[a] == dist[b] && a < b);
  });
  std::vector<double> prefix(order.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    sum += realization.cr_interferences[order[j]];
    prefix[j] = sum;
  }

  // Admitting the j farthest CRs is feasible for j <= j*; R_e admits
  // #{r_i >= R_e} CRs, which is <= j* exactly when R_e exceeds the
  // (j*+1)-th largest distance.
  std::vector<double> out;
  out.reserve(thresholds.size());
  for (const double threshold : thresholds) {
    const double signal = realization.pu_signal;
    if (!meets_sinr(signal, 0.0, noise, threshold)) {
      out.push_back(kInf);
      continue;
    }
    const auto first_fail = std::partition_point(prefix.begin(), prefix.end(), [&](double s) {
      return meets_sinr(signal, s, noise, threshold);
    });
    out.push_back(first_fail == prefix.end() ? -kInf
                                             : dist[order[static_cast<std::size_t>(
                                                   first_fail - prefix.begin())]]);
  }
  return out;
}

PezReliabilityCurve::PezReliabilityCurve(std::vector<double> critical_radii)
    : critical_(std::move(critical_radii)) {
  if (critical_.empty()) throw std::invalid_argument("need at least one replication");
  std::sort(critical_.begin(), critical_.end());
}

PezReliabilityCurve::PezReliabilityCurve(const Scenario& scenario, double target_sinr_db,
                                         std::uint64_t replications, unsigned workers)
    : PezReliabilityCurve(std::move(
          for_targets(scenario, std::span<const double>(&target_sinr_db, 1), replications,
                      workers)
              .front())) {}

std::vector<PezReliabilityCurve> PezReliabilityCurve::for_targets(
    const Scenario& scenario, std::span<const double> target_sinr_db,
    std::uint64_t replications, unsigned workers) {
  if (replications == 0) throw std::invalid_argument("need at least one replication");
  std::vector<double> thresholds;
  for (const double db : target_sinr_db) thresholds.push_back(db_to_linear(db));
  const double noise = scenario.power.noise;
  const auto per_rep =
      run_replications<std::vector<double>>(replications, workers, [&](std::uint64_t rep) {
        return pez_critical_radii(sample_realization(scenario, rep), noise, thresholds);
      });
  std::vector<PezReliabilityCurve> curves;
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    std::vector<double> radii(replications);
    for (std::uint64_t rep = 0; rep < replications; ++rep) radii[rep] = per_rep[rep][t];
    curves.emplace_back(std::move(radii));
  }
  return curves;
}

double PezReliabilityCurve::operator()(double exclusion_radius_m) const {
  const auto passing = std::lower_bound(critical_.begin(), critical_.end(), exclusion_radius_m);
  return static_cast<double>(passing - critical_.begin()) /
         static_cast<double>(critical_.size());
}

namespace {

void check_pez_targets(std::span<const double> target_sinr_db, double reliability_target) {
  if (!(reliability_target > 0.0 && reliability_target < 1.0)) {
    throw std::invalid_argument("reliability target must lie in (0, 1)");
  }
  for (const double t : target_sinr_db) {
    if (t > kCalibrationSnrDb) {
      throw std::invalid_argument("target SINR cannot exceed the calibrated SNR threshold");
    }
  }
}

}  // namespace

PezSolution solve_pez_radius(const PezReliabilityCurve& curve, const Geometry& geom,
                             double reliability_target) {
  constexpr double kToleranceM = 1.0;
  const double inner = geom.inner();
  const double outer = geom.outer();

  PezSolution out;
  out.replications = curve.replications();
  if (const double r = curve(inner); r >= reliability_target) {
    out.radius_m = inner;
    out.reliability = r;
    out.status = PezStatus::kNoExclusionNeeded;
    return out;
  }
  if (const double r = curve(outer); r < reliability_target) {
    out.radius_m = outer;
    out.reliability = r;
    out.status = PezStatus::kFullExclusionFails;
    return out;
  }

  double lo = inner;  // fails
  double hi = outer;  // passes
  for (int step = 0; hi - lo > kToleranceM; ++step) {
    if (step >= 200) throw ConvergenceError("PEZ radius bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    if (curve(mid) >= reliability_target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.radius_m = hi;
  out.reliability = curve(hi);
  out.status = PezStatus::kInterior;
  return out;
}

PezSolution solve_pez_radius(const Scenario& scenario, double target_sinr_db,
                             double reliability_target, std::uint64_t replications,
                             unsigned workers) {
  return solve_pez_radii(scenario, std::span<const double>(&target_sinr_db, 1),
                         reliability_target, replications, workers)
      .front();
}

std::vector<PezSolution> solve_pez_radii(const Scenario& scenario,
                                         std::span<const double> target_sinr_db,
                                         double reliability_target,
                                         std::uint64_t replications, unsigned workers) {
  check_pez_targets(target_sinr_db, reliability_target);
  const auto curves =
      PezReliabilityCurve::for_targets(scenario, target_sinr_db, replications, workers);
  std::vector<PezSolution> out;
  for (const auto& curve : curves) {
    out.push_back(solve_pez_radius(curve, scenario.geom, reliability_target));
  }
  return out;
}

}  // namespace crsim
