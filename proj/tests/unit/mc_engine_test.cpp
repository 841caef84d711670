#include "crsim/mc_engine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "crsim/analytic.hpp"
#include "oracles.hpp"

namespace crsim {
namespace {

Realization with_interferences(std::vector<double> values) {
  Realization r;
  r.n_active = static_cast<std::int64_t>(values.size());
  r.cr_distances.assign(values.size(), 500.0);
  r.cr_shadows.assign(values.size(), 0.0);
  r.cr_interferences = std::move(values);
  return r;
}

// Calibrated scenario with a chosen CR density per km^2.
Scenario calibrated(double gamma, double sigma_db, double density_per_km2, double rc,
                    std::uint64_t seed = 11) {
  const Geometry geom(1000.0, 1.0, rc);
  return make_calibrated_scenario(PropagationEnv(gamma, sigma_db), geom,
                                  Population(density_per_km2 * 1e-6, 0.1, geom), 1.0,
                                  SeedSpec{seed});
}

TEST(AggregateInterferenceTest, Sums) {
  EXPECT_EQ(aggregate_interference(with_interferences({3.0, 4.0}), std::vector<bool>{false, false}),
            0.0);
  EXPECT_EQ(aggregate_interference(with_interferences({2.5}), std::vector<bool>{true}), 2.5);
  std::vector<double> values;
  for (int i = 1; i <= 10; ++i) values.push_back(i);
  EXPECT_EQ(aggregate_interference(with_interferences(values), std::vector<bool>(10, true)), 55.0);
  const std::vector<std::size_t> odd{0, 2, 4, 6, 8};
  EXPECT_EQ(aggregate_interference(with_interferences(values), odd), 25.0);
}

TEST(AggregateInterferenceTest, LengthMismatchThrows) {
  EXPECT_THROW(aggregate_interference(with_interferences({1.0, 2.0}), std::vector<bool>{true}),
               std::invalid_argument);
}

TEST(EmpiricalCdfTest, StepConventions) {
  const EmpiricalCdf e({3.0, 1.0, 2.0, 2.0});
  EXPECT_EQ(e(0.5), 0.0);
  EXPECT_EQ(e(1.0), 0.25);
  EXPECT_EQ(e.left_limit(2.0), 0.25);
  EXPECT_EQ(e(2.0), 0.75);
  EXPECT_EQ(e(3.0), 1.0);
  EXPECT_EQ(e.quantile(0.5), 2.0);
  EXPECT_EQ(e.quantile(1.0), 3.0);
  EXPECT_THROW(EmpiricalCdf(std::vector<double>{}), std::invalid_argument);
}

TEST(KsDistanceTest, ConstantSampleAgainstHalfCdf) {
  const EmpiricalCdf e(std::vector<double>(100, 1.0));
  EXPECT_DOUBLE_EQ(ks_distance(e, [](double x) { return x < 1.0 ? 0.0 : (x == 1.0 ? 0.5 : 1.0); }),
                   0.5);
}

TEST(KsDistanceTest, DisjointSupports) {
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(10.0 + i * 1e-3);
  const double ks = ks_distance(EmpiricalCdf(xs), [](double x) {
    return std::clamp(x, 0.0, 1.0);  // uniform(0, 1)
  });
  EXPECT_EQ(ks, 1.0);
}

TEST(KsDistanceTest, WithinDvoretzkyKieferWolfowitzBound) {
  // P(KS > eps) <= 2 exp(-2 n eps^2) = 0.01 at n = 1e6 gives eps = 0.00163.
  const std::uint64_t n = 1'000'000;
  const double eps = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
  EXPECT_LT(eps, 0.002);
  const PropagationEnv env(3.0, 6.0);
  const Annulus annulus{1.0, 1000.0};
  const EmpiricalCdf e(sample_single_interferers(env, annulus, 1.0, SeedSpec{3}, n, 2));
  EXPECT_LT(ks_distance(e, [&](double x) { return single_interferer_cdf(x, env, annulus, 1.0); }),
            0.002);
}

TEST(ReliabilityEstimateTest, FromCounts) {
  const auto all = ReliabilityEstimate::from_counts(50, 50);
  EXPECT_EQ(all.probability, 1.0);
  EXPECT_EQ(all.ci_halfwidth, 0.0);
  const auto half = ReliabilityEstimate::from_counts(50, 100);
  EXPECT_DOUBLE_EQ(half.ci_halfwidth, 1.96 * std::sqrt(0.25 / 100.0));
}

TEST(EstimateReliabilityTest, AlwaysTruePredicate) {
  const Scenario s = calibrated(3.5, 8.0, 1000.0, 100.0);
  const auto est = estimate_reliability(
      s, [](const Realization&) { return AdmissionResult{}; },
      [](const Realization&, const AdmissionResult&) { return true; }, 1000, 2);
  EXPECT_EQ(est.probability, 1.0);
  EXPECT_EQ(est.ci_halfwidth, 0.0);
  EXPECT_EQ(est.replications, 1000u);
}

TEST(EstimateReliabilityTest, CalibratedLinkWithoutSecondaryUsers) {
  const Scenario s = calibrated(3.5, 8.0, 0.0, 100.0);
  const auto est = estimate_sinr_reliability(s, AdmissionPolicy::pez(1000.0, 5.0), 5.0, 100'000, 2);
  EXPECT_NEAR(est.probability, 0.95, 0.005);
}

TEST(EstimateReliabilityTest, VacuousThreshold) {
  const Scenario s = calibrated(3.5, 8.0, 1000.0, 100.0);
  const double minus_inf = -std::numeric_limits<double>::infinity();
  const auto est =
      estimate_sinr_reliability(s, AdmissionPolicy::rem_centralized(20.0), minus_inf, 2000, 2);
  EXPECT_EQ(est.probability, 1.0);
}

TEST(DeterminismTest, WorkerCountDoesNotChangeResults) {
  const Scenario s = calibrated(3.5, 8.0, 1000.0, 100.0);
  const auto policy = AdmissionPolicy::rem_decentralized(2.0);
  const auto one = estimate_sinr_reliability(s, policy, 4.0, 5000, 1);
  for (const unsigned w : {2u, 3u, 8u}) {
    const auto many = estimate_sinr_reliability(s, policy, 4.0, 5000, w);
    EXPECT_EQ(one.probability, many.probability);
  }
  const PropagationEnv env(3.5, 8.0);
  const Annulus annulus{1.0, 1000.0};
  const auto a = sample_single_interferers(env, annulus, 1.0, SeedSpec{5}, 20'000, 1);
  const auto b = sample_single_interferers(env, annulus, 1.0, SeedSpec{5}, 20'000, 5);
  EXPECT_EQ(a, b);
}

TEST(AggregateDominanceTest, TotalNeverBelowAnyTerm) {
  const Scenario s = calibrated(3.5, 8.0, 1000.0, 100.0);
  for (std::uint64_t rep = 0; rep < 2000; ++rep) {
    const Realization r = sample_realization(s, rep);
    const double total = aggregate_interference(r, std::vector<bool>(r.cr_interferences.size(), true));
    for (const double term : r.cr_interferences) ASSERT_GE(total, term);
  }
}

TEST(AggregateDominanceTest, EmpiricalCdfOfTotalLiesLeftOfSingleTerm) {
  const Scenario s = calibrated(3.5, 8.0, 1000.0, 100.0);
  std::vector<double> totals;
  std::vector<double> firsts;
  for (std::uint64_t rep = 0; rep < 5000; ++rep) {
    const Realization r = sample_realization(s, rep);
    if (r.cr_interferences.empty()) continue;
    totals.push_back(aggregate_interference(r, std::vector<bool>(r.cr_interferences.size(), true)));
    firsts.push_back(r.cr_interferences.front());
  }
  const EmpiricalCdf ft(totals);
  const EmpiricalCdf fs(firsts);
  for (const double x : fs.values()) ASSERT_LE(ft(x), fs(x));
}

TEST(WaldIdentityTest, MeanAggregateIsMeanCountTimesMeanTerm) {
  // Light shadowing and a large inner radius keep the variance finite in practice.
  const PropagationEnv env(3.5, 2.0);
  const Geometry geom(1000.0, 100.0, 1000.0);
  const Population pop(200.0 * 1e-6, 0.1, geom);
  const Scenario s{env, geom, pop, PowerLevels{1.0, 1.0, 1.0}, SeedSpec{17}};
  const std::uint64_t n = 200'000;
  std::vector<double> totals(n);
  for (std::uint64_t rep = 0; rep < n; ++rep) {
    const Realization r = sample_realization(s, rep);
    totals[rep] = aggregate_interference(r, std::vector<bool>(r.cr_interferences.size(), true));
  }
  const auto stats = test::sample_stats(totals);
  const double expected = static_cast<double>(pop.max_count()) * pop.activity() *
                          interference_moment(1, env, geom.annulus(), 1.0);
  const double se = std::sqrt(stats.variance / static_cast<double>(n));
  EXPECT_LT(std::abs(stats.mean - expected), 3.0 * se);
}

}  // namespace
}  // namespace crsim
