#include <benchmark/benchmark.h>

#include "pisem/closure.hpp"
#include "pisem/families.hpp"

using namespace pisem;

static void BM_CloseTensorFamily(benchmark::State& state) {
  const int blocks = static_cast<int>(state.range(0));
  const auto gens = tensor_semigroup_generators(blocks, 2, dihedral8_generators());
  const Tol tol{1e-9};
  for (auto _ : state) {
    ClosedSemigroup s = close(gens, tol, ClosureBudget{5000, 24});
    benchmark::DoNotOptimize(s.elements.data());
  }
  state.SetLabel("elements=" +
                 std::to_string(close(gens, tol, ClosureBudget{5000, 24}).size()));
}
BENCHMARK(BM_CloseTensorFamily)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_CloseWeylHeisenberg(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto gens = weyl_heisenberg_generators(n);
  const Tol tol{1e-9};
  for (auto _ : state) {
    ClosedSemigroup s = close(gens, tol, ClosureBudget{5000, 24});
    benchmark::DoNotOptimize(s.elements.data());
  }
}
BENCHMARK(BM_CloseWeylHeisenberg)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
