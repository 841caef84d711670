#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "crsim/admission.hpp"
#include "crsim/analytic.hpp"
#include "crsim/mc_engine.hpp"
#include "crsim/scenario.hpp"

namespace {

using namespace crsim;

Scenario make(double density_per_km2, double rc) {
  const Geometry geom(1000.0, 1.0, rc);
  return make_calibrated_scenario(PropagationEnv(3.5, 8.0), geom,
                                  Population(density_per_km2 * 1e-6, 0.1, geom), 1.0, SeedSpec{1});
}

void BM_SingleInterfererCdf(benchmark::State& state) {
  const PropagationEnv env(3.5, 8.0);
  const Annulus annulus{1.0, 1000.0};
  double x = 1e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_interferer_cdf(x, env, annulus, 1.0));
    x *= 1.01;
    if (x > 1.0) x = 1e-12;
  }
}
BENCHMARK(BM_SingleInterfererCdf);

void BM_CalibratePower(benchmark::State& state) {
  const PropagationEnv env(3.5, 8.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(calibrate_power(env, {1.0, 1000.0}, 0.95, 5.0, 1.0));
  }
}
BENCHMARK(BM_CalibratePower);

void BM_SampleRealization(benchmark::State& state) {
  const Scenario s = make(static_cast<double>(state.range(0)), 100.0);
  std::uint64_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_realization(s, rep++));
}
BENCHMARK(BM_SampleRealization)->Arg(1000)->Arg(10000);

// Interference lists as seen at high density.
std::vector<double> draws(std::size_t n) {
  const Scenario s = make(10000.0, 100.0);
  auto xs = sample_single_interferers(s.env, s.geom.annulus(), s.power.cr_scale, s.seeds, n, 1);
  return xs;
}

void BM_RemCentralized(benchmark::State& state) {
  const auto xs = draws(static_cast<std::size_t>(state.range(0)));
  const double budget = interference_budget(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(rem_centralized(xs, budget));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RemCentralized)->Arg(300)->Arg(3000);

void BM_RemDecentralized(benchmark::State& state) {
  const auto xs = draws(static_cast<std::size_t>(state.range(0)));
  const double budget = interference_budget(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(rem_decentralized(xs, budget));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RemDecentralized)->Arg(300)->Arg(3000);

void BM_PezCriticalRadii(benchmark::State& state) {
  const Scenario s = make(1000.0, 50.0);
  std::vector<Realization> rs;
  for (std::uint64_t rep = 0; rep < 64; ++rep) rs.push_back(sample_realization(s, rep));
  const std::vector<double> thresholds{1.0, 1.26, 1.58, 2.0, 2.51, 3.16};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pez_critical_radii(rs[i++ % rs.size()], 1.0, thresholds));
  }
}
BENCHMARK(BM_PezCriticalRadii);

}  // namespace

BENCHMARK_MAIN();
