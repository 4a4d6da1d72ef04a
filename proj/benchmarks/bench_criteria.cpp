#include <benchmark/benchmark.h>

#include "skewflow/axioms.hpp"
#include "skewflow/builtins.hpp"
#include "skewflow/estimate.hpp"
#include "skewflow/generator.hpp"
#include "skewflow/stability.hpp"

namespace skewflow {
namespace {

Horizon horizon_for(const SkewEvolutionSystem& system, int n_max) {
  HorizonSpec spec;
  spec.n_max = n_max;
  spec.states = {{0.0}, {1.0}};
  return make_horizon(system, spec);
}

SkewEvolutionSystem stable_generated(int dim) {
  GeneratorSpec spec;
  spec.conjugate = true;
  spec.steps = 256;
  spec.blocks = {{dim, -2.0, -0.5, BlockRole::stable}};
  return random_block_cocycle(spec).fixture.system;
}

void BM_EsCertificate(benchmark::State& state) {
  const auto sys = stable_generated(static_cast<int>(state.range(1)));
  const auto h = horizon_for(sys, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(es_certificate(sys, 0.25, h));
}
BENCHMARK(BM_EsCertificate)->Args({25, 1})->Args({50, 1})->Args({100, 1})->Args({50, 4})->Unit(benchmark::kMillisecond);

void BM_DatkoCriterion(benchmark::State& state) {
  const auto sys = stable_generated(static_cast<int>(state.range(1)));
  const auto h = horizon_for(sys, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(datko_criterion(sys, MonotoneGauge::identity(), 0.25, h));
}
BENCHMARK(BM_DatkoCriterion)->Args({25, 1})->Args({50, 1})->Args({100, 1})->Args({50, 4})->Unit(benchmark::kMillisecond);

void BM_AdjointCriterion(benchmark::State& state) {
  const auto sys = stable_generated(3);
  const auto h = horizon_for(sys, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adjoint_criterion(sys, MonotoneGauge::power(2.0), 0.25, h));
}
BENCHMARK(BM_AdjointCriterion)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_EstimateExponent(benchmark::State& state) {
  const auto sys = builtin("ex_nues1").system;
  const auto h = horizon_for(sys, 50);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_exponent(sys, Direction::stable, h));
}
BENCHMARK(BM_EstimateExponent)->Unit(benchmark::kMillisecond);

void BM_VerifyAxioms(benchmark::State& state) {
  const auto sys = builtin(state.range(0) == 0 ? "ex_nued" : "ex_ce").system;
  const auto grid = random_triples(50, 12.0, 1, false);
  const std::vector<StatePoint> states{{0.0}, {1.0}, {2.0}};
  for (auto _ : state) benchmark::DoNotOptimize(verify_axioms(sys, grid, states));
}
BENCHMARK(BM_VerifyAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace skewflow
