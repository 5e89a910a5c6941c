#include <benchmark/benchmark.h>

#include <cmath>

#include "symred/catalog.hpp"
#include "symred/frobenius.hpp"
#include "symred/models.hpp"
#include "symred/suites.hpp"
#include "symred/unitary.hpp"

using namespace symred;

namespace {

CheckOptions with_samples(int n) {
  CheckOptions o;
  o.samples = n;
  return o;
}

void BM_MomentCondition(benchmark::State& state) {
  const HamiltonianSpace s = coadjoint_orbit_so3(1.0);
  const CheckOptions o = with_samples(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_moment_condition(s, o).max_residual);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MomentCondition)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ReciprocityMaps(benchmark::State& state) {
  const FrobeniusInstance inst = spherical_harmonics_instance(static_cast<double>(state.range(0)));
  const CheckOptions o = with_samples(200);
  for (auto _ : state) benchmark::DoNotOptimize(check_reciprocity_maps(inst, o).max_residual);
}
BENCHMARK(BM_ReciprocityMaps)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FrobeniusPullback(benchmark::State& state) {
  const FrobeniusInstance inst = spherical_harmonics_instance(2.0);
  const CheckOptions o = with_samples(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_frobenius_pullback(inst, o).max_residual);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FrobeniusPullback)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Kms(benchmark::State& state) {
  const KmsInstance inst = kms_instance(std::sqrt(2.0));
  const CheckOptions o = with_samples(100);
  for (auto _ : state) benchmark::DoNotOptimize(check_kms(inst, o).max_residual);
}
BENCHMARK(BM_Kms)->Unit(benchmark::kMillisecond);

void BM_WeightProfile(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weight_profile(ell));
}
BENCHMARK(BM_WeightProfile)->DenseRange(2, 12, 5);

void BM_Scenario(benchmark::State& state, const char* id) {
  RunConfig c;
  c.samples = 50;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(id, c).matched());
}
BENCHMARK_CAPTURE(BM_Scenario, spherical_harmonics, "spherical_harmonics")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scenario, torus_kms, "torus_kms")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scenario, strict_subgroup, "strict_subgroup")->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
