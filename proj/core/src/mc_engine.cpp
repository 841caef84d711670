#include "crsim/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "crsim/parallel.hpp"

namespace crsim {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : values_(std::move(samples)) {
  if (values_.empty()) throw std::invalid_argument("empirical CDF needs at least one sample");
  std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalCdf::quantile(double p) const {
  const double n = static_cast<double>(values_.size());
  auto idx = static_cast<std::size_t>(std::ceil(std::clamp(p, 0.0, 1.0) * n));
  idx = std::clamp<std::size_t>(idx, 1, values_.size());
  return values_[idx - 1];
}

double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& cdf) {
  const auto values = empirical.values();
  const double n = static_cast<double>(values.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < values.size()) {
    // Step at a run of ties: F_n jumps from i/n to j/n.
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double f = cdf(values[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i) / n - f),
                      std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return worst;
}

double aggregate_interference(const Realization& realization, const std::vector<bool>& mask) {
  if (mask.size() != realization.cr_interferences.size()) {
    throw std::invalid_argument("transmit mask length differs from the active CR count");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) sum += realization.cr_interferences[i];
  }
  return sum;
}

double aggregate_interference(const Realization& realization,
                              std::span<const std::size_t> indices) {
  double sum = 0.0;
  for (const std::size_t i : indices) sum += realization.cr_interferences.at(i);
  return sum;
}

ReliabilityEstimate ReliabilityEstimate::from_counts(std::uint64_t successes,
                                                     std::uint64_t replications) {
  if (replications == 0) throw std::invalid_argument("need at least one replication");
  const double n = static_cast<double>(replications);
  const double p = static_cast<double>(successes) / n;
  return {p, replications, 1.96 * std::sqrt(p * (1.0 - p) / n)};
}

ReliabilityEstimate estimate_reliability(const Scenario& scenario, const AdmissionRule& rule,
                                         const EventPredicate& event,
                                         std::uint64_t replications, unsigned workers) {
  const auto outcomes =
      run_replications<std::uint8_t>(replications, workers, [&](std::uint64_t rep) {
        const Realization r = sample_realization(scenario, rep);
        return static_cast<std::uint8_t>(event(r, rule(r)) ? 1 : 0);
      });
  const auto successes =
      static_cast<std::uint64_t>(std::count(outcomes.begin(), outcomes.end(), 1));
  return ReliabilityEstimate::from_counts(successes, replications);
}

ReliabilityEstimate estimate_sinr_reliability(const Scenario& scenario,
                                              const AdmissionPolicy& policy,
                                              double target_sinr_db,
                                              std::uint64_t replications, unsigned workers) {
  policy.validate(scenario.geom);
  const double noise = scenario.power.noise;
  const double threshold = db_to_linear(target_sinr_db);
  return estimate_reliability(
      scenario, [&](const Realization& r) { return admit(policy, r, noise); },
      [&](const Realization& r, const AdmissionResult& a) {
        return meets_sinr(r.pu_signal, a.aggregate, noise, threshold);
      },
      replications, workers);
}

std::vector<double> sample_single_interferers(const PropagationEnv& env, const Annulus& annulus,
                                              double scale, const SeedSpec& seeds,
                                              std::uint64_t count, unsigned workers) {
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  const auto chunks =
      run_replications<std::vector<double>>(blocks, workers, [&](std::uint64_t block) {
        const std::uint64_t begin = block * kBlock;
        const std::uint64_t end = std::min(count, begin + kBlock);
        CounterRng place = seeds.stream(StreamPurpose::kPlacement, block);
        CounterRng shade = seeds.stream(StreamPurpose::kSingleDraw, block);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> out(end - begin);
        for (double& v : out) {
          const double r = sample_annulus_distance(annulus, place);
          v = received_power(scale, env.sigma_x() * normal(shade), r, env.gamma());
        }
        return out;
      });
  std::vector<double> out;
  out.reserve(count);
  for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace crsim
