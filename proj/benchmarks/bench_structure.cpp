#include <benchmark/benchmark.h>

#include "pisem/families.hpp"
#include "pisem/powerpi.hpp"
#include "pisem/random.hpp"
#include "pisem/structure.hpp"

using namespace pisem;

static void BM_HalmosWallen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1234);
  const PpiSample sample = random_power_partial_isometry(n, rng);
  const Tol tol{1e-9};
  for (auto _ : state) {
    HWDecomposition dec = halmos_wallen(sample.t, tol);
    benchmark::DoNotOptimize(dec.basis.data());
  }
}
BENCHMARK(BM_HalmosWallen)->Arg(6)->Arg(12)->Arg(24)->Unit(benchmark::kMicrosecond);

static void BM_ExtractZeroUnitary(benchmark::State& state) {
  const int blocks = static_cast<int>(state.range(0));
  const Tol tol{1e-9};
  const ClosedSemigroup s =
      close(tensor_semigroup_generators(blocks, 2, dihedral8_generators()), tol,
            ClosureBudget{5000, 24});
  for (auto _ : state) {
    ZeroUnitaryStructure z = extract_zero_unitary(s, tol);
    benchmark::DoNotOptimize(z.basis.data());
  }
}
BENCHMARK(BM_ExtractZeroUnitary)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_Irreducibility(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Tol tol{1e-9};
  const ClosedSemigroup s = close(weyl_heisenberg_generators(n), tol, ClosureBudget{5000, 24});
  for (auto _ : state) {
    IrreducibilityReport r = irreducibility(s, tol);
    benchmark::DoNotOptimize(r.algebra_dim);
  }
}
BENCHMARK(BM_Irreducibility)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
