#include <benchmark/benchmark.h>

#include "skewflow/generator.hpp"
#include "skewflow/splitting.hpp"

namespace skewflow {
namespace {

GeneratedSystem trichotomic(std::uint64_t seed) {
  GeneratorSpec spec;
  spec.seed = seed;
  spec.conjugate = true;
  spec.steps = 128;
  spec.blocks = {{1, -2.0, -1.0, BlockRole::stable}, {1, 1.0, 2.0, BlockRole::unstable},
                 {1, -0.05, 0.05, BlockRole::central}};
  return random_block_cocycle(spec);
}

Horizon horizon_for(const SkewEvolutionSystem& system, int n_max) {
  HorizonSpec spec;
  spec.n_max = n_max;
  spec.states = {{0.0}};
  return make_horizon(system, spec);
}

void BM_Generator(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(trichotomic(seed++));
}
BENCHMARK(BM_Generator)->Unit(benchmark::kMicrosecond);

void BM_Trichotomy(benchmark::State& state) {
  const auto g = trichotomic(3);
  const auto h = horizon_for(g.fixture.system, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trichotomy_certificate(g.fixture.system, *g.fixture.family, -1.0, -0.1, 0.1, 1.0, h));
  }
}
BENCHMARK(BM_Trichotomy)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_FourProjector(benchmark::State& state) {
  const auto g = trichotomic(3);
  const auto quad = four_from_three(*g.fixture.family);
  const auto h = horizon_for(g.fixture.system, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(four_projector_certificate(g.fixture.system, quad, 1.0, 0.5, h, false));
}
BENCHMARK(BM_FourProjector)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_DichotomySum(benchmark::State& state) {
  GeneratorSpec spec;
  spec.conjugate = true;
  spec.steps = 128;
  spec.blocks = {{2, -2.0, -1.0, BlockRole::stable}, {2, 1.0, 2.0, BlockRole::unstable}};
  const auto g = random_block_cocycle(spec);
  const auto h = horizon_for(g.fixture.system, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dichotomy_sum_criterion(g.fixture.system, *g.fixture.family, 0.5, -0.5, h));
  }
}
BENCHMARK(BM_DichotomySum)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace skewflow
