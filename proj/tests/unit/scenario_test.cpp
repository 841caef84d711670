#include "crsim/scenario.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "crsim/analytic.hpp"
#include "crsim/mc_engine.hpp"
#include "oracles.hpp"

namespace crsim {
namespace {

Scenario default_scenario(double sigma_db = 8.0, double density_km2 = 1000.0) {
  const PropagationEnv env(3.5, sigma_db);
  const Geometry geom(1000.0, 1.0, 1000.0);
  const Population pop(density_km2 * 1e-6, 0.1, geom);
  return make_calibrated_scenario(env, geom, pop, 1.0, SeedSpec{42});
}

TEST(PropagationEnvTest, SigmaXIsBetaTimesSigmaDb) {
  for (const double s : {0.0, 4.0, 6.0, 8.0, 12.0}) {
    const PropagationEnv env(3.0, s);
    EXPECT_EQ(env.sigma_x(), kBeta * s);
  }
  EXPECT_DOUBLE_EQ(kBeta, std::log(10.0) / 10.0);
}

TEST(PropagationEnvTest, RejectsOutOfRange) {
  EXPECT_THROW(PropagationEnv(1.9, 8.0), std::invalid_argument);
  EXPECT_THROW(PropagationEnv(6.1, 8.0), std::invalid_argument);
  EXPECT_THROW(PropagationEnv(3.0, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(PropagationEnv(2.0, 0.0));
  EXPECT_NO_THROW(PropagationEnv(6.0, 0.0));
}

TEST(GeometryTest, Invariants) {
  EXPECT_THROW(Geometry(1000.0, 0.0, 100.0), std::invalid_argument);
  EXPECT_THROW(Geometry(1000.0, 1000.0, 100.0), std::invalid_argument);
  EXPECT_THROW(Geometry(1000.0, 1.0, 1001.0), std::invalid_argument);
  EXPECT_THROW(Geometry(1000.0, 1.0, 0.0), std::invalid_argument);
  const Geometry g(1000.0, 1.0, 50.0);
  EXPECT_EQ(g.cr_annulus().inner, 1.0);
  EXPECT_EQ(g.cr_annulus().outer, 50.0);
}

TEST(PopulationTest, MaxCountIsFloorOfAreaTimesDensity) {
  const Geometry g(1000.0, 1.0, 1000.0);
  EXPECT_EQ(Population(1e-3, 0.1, g).max_count(), 3141);
  EXPECT_EQ(Population(1e-2, 0.1, g).max_count(), 31415);
  EXPECT_EQ(Population(0.0, 0.1, g).max_count(), 0);
  EXPECT_THROW(Population(1e-3, 1.5, g), std::invalid_argument);
  EXPECT_THROW(Population(-1e-3, 0.5, g), std::invalid_argument);
}

TEST(SampleCrCountTest, DegenerateActivity) {
  const Geometry g(1000.0, 1.0, 1000.0);
  const Population none(1e-3, 0.0, g);
  const Population all(1e-3, 1.0, g);
  CounterRng rng(7);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_cr_count(none, rng), 0);
    EXPECT_EQ(sample_cr_count(all, rng), 3141);
  }
}

TEST(SampleCrCountTest, BinomialMean) {
  const Geometry g(1000.0, 1.0, 1000.0);
  const Population pop(1e-3, 0.1, g);
  CounterRng rng(11);
  constexpr int kDraws = 100'000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) sum += static_cast<double>(sample_cr_count(pop, rng));
  const double expected = 0.1 * static_cast<double>(pop.max_count());
  EXPECT_NEAR(sum / kDraws, expected, 1.0);
}

TEST(AnnulusDistanceTest, InverseCdfEndpoints) {
  const Annulus a{1.0, 1000.0};
  EXPECT_EQ(annulus_distance(a, 0.0), 1.0);
  EXPECT_NEAR(annulus_distance(a, std::nextafter(1.0, 0.0)), 1000.0, 1e-9);
}

TEST(AnnulusDistanceTest, EmpiricalMeanMatchesClosedForm) {
  const Annulus a{1.0, 1000.0};
  CounterRng rng(3);
  constexpr int kDraws = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) sum += sample_annulus_distance(a, rng);
  const double r3 = std::pow(a.outer, 3) - std::pow(a.inner, 3);
  const double expected = 2.0 * r3 / (3.0 * a.area_factor());
  EXPECT_NEAR(sum / kDraws, expected, 0.5);
}

TEST(AnnulusDistanceTest, KolmogorovSmirnovAgainstRadialCdf) {
  const Annulus a{1.0, 1000.0};
  CounterRng rng(5);
  std::vector<double> draws(1'000'000);
  for (double& d : draws) d = sample_annulus_distance(a, rng);
  const EmpiricalCdf ecdf(std::move(draws));
  const double ks = ks_distance(ecdf, [&](double r) {
    return std::clamp((r * r - a.inner * a.inner) / a.area_factor(), 0.0, 1.0);
  });
  EXPECT_LT(ks, 0.002);
}

TEST(SampleRealizationTest, NoShadowingAtFixedDistance) {
  const PropagationEnv env(3.5, 0.0);
  const Geometry geom(1000.0, 1000.0 - 1e-9, 1000.0);
  const Population pop(1e-3, 0.5, geom);
  Scenario s{env, geom, pop, PowerLevels{1.0, 1.0, 1.0}, SeedSpec{9}};
  const Realization r = sample_realization(s, 0);
  ASSERT_GT(r.n_active, 0);
  for (const double i : r.cr_interferences) {
    EXPECT_NEAR(i / std::pow(1000.0, -3.5), 1.0, 1e-10);
  }
}

TEST(SampleRealizationTest, Deterministic) {
  const Scenario s = default_scenario();
  for (std::uint64_t rep : {0u, 1u, 977u}) {
    const Realization a = sample_realization(s, rep);
    const Realization b = sample_realization(s, rep);
    EXPECT_EQ(a.n_active, b.n_active);
    EXPECT_EQ(a.pu_signal, b.pu_signal);
    EXPECT_EQ(a.cr_distances, b.cr_distances);
    EXPECT_EQ(a.cr_shadows, b.cr_shadows);
    EXPECT_EQ(a.cr_interferences, b.cr_interferences);
  }
}

TEST(SampleRealizationTest, EvaluationOrderDoesNotMatter) {
  const Scenario s = default_scenario();
  std::vector<std::uint64_t> order(64);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<Realization> forward;
  for (const auto rep : order) forward.push_back(sample_realization(s, rep));
  std::reverse(order.begin(), order.end());
  for (const auto rep : order) {
    const Realization r = sample_realization(s, rep);
    EXPECT_EQ(r.cr_interferences, forward[rep].cr_interferences);
    EXPECT_EQ(r.pu_signal, forward[rep].pu_signal);
  }
}

TEST(SampleRealizationTest, Invariants) {
  const Scenario s = default_scenario();
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    const Realization r = sample_realization(s, rep);
    const auto n = static_cast<std::size_t>(r.n_active);
    ASSERT_EQ(r.cr_distances.size(), n);
    ASSERT_EQ(r.cr_shadows.size(), n);
    ASSERT_EQ(r.cr_interferences.size(), n);
    EXPECT_GE(r.pu_distance, s.geom.inner());
    EXPECT_LE(r.pu_distance, s.geom.outer());
    EXPECT_GE(r.pu_signal, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GE(r.cr_distances[i], s.geom.inner());
      EXPECT_LE(r.cr_distances[i], s.geom.outer());
      const double rebuilt = s.power.cr_scale * std::exp(r.cr_shadows[i]) *
                             std::pow(r.cr_distances[i], -s.env.gamma());
      EXPECT_NEAR(r.cr_interferences[i] / rebuilt, 1.0, 1e-12);
    }
  }
}

TEST(SampleRealizationTest, SingleCrMeanMatchesAnalyticMoment) {
  // Moderate tail (cv^2 ~ 28) so the sample mean is a usable oracle.
  const PropagationEnv env(3.5, 2.0);
  const Geometry geom(1000.0, 100.0, 1000.0);
  const Population one(1.5 / (std::numbers::pi * 1e6), 1.0, geom);
  ASSERT_EQ(one.max_count(), 1);
  const Scenario s{env, geom, one, PowerLevels{1.0, 1.0, 1.0}, SeedSpec{17}};
  constexpr int kDraws = 1'000'000;
  double sum = 0.0;
  for (int rep = 0; rep < kDraws; ++rep) sum += sample_realization(s, rep).cr_interferences.at(0);
  const double m1 = interference_moment(1, env, geom.annulus(), 1.0);
  EXPECT_NEAR(sum / kDraws / m1, 1.0, 0.02);
}

}  // namespace
}  // namespace crsim
