#include "stabscope/classifier.hpp"
#include "stabscope/equivalence.hpp"
#include "stabscope/invariants.hpp"
#include "stabscope/stabilizer.hpp"

#include <benchmark/benchmark.h>

using namespace stabscope;

static void BM_StabilizerPure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = make_rng(1);
  const PureState psi = haar_random_local_unitary(n, rng).apply(ghz_state(n, 0.8, 0.6));
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer_pure(psi));
}
BENCHMARK(BM_StabilizerPure)->DenseRange(3, 12, 3)->Unit(benchmark::kMicrosecond);

static void BM_StabilizerDensity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = make_rng(2);
  const DensityMatrix rho = to_density(haar_random_state(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer_density(rho));
}
BENCHMARK(BM_StabilizerDensity)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_PolynomialInvariant(benchmark::State& state) {
  Rng rng = make_rng(3);
  const PureState psi = haar_random_state(4, rng);
  const PermutationTriple p = state.range(0) == 3 ? reference_triple() : PermutationTriple::identity(4);
  for (auto _ : state) benchmark::DoNotOptimize(polynomial_invariant(psi, p));
}
BENCHMARK(BM_PolynomialInvariant)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_Fingerprint4q(benchmark::State& state) {
  const PureState psi = canonical_4q_state(1.0, {0.3, 0.6}, {-1.3, -0.6});
  for (auto _ : state) benchmark::DoNotOptimize(fingerprint(psi));
}
BENCHMARK(BM_Fingerprint4q)->Unit(benchmark::kMillisecond);

static void BM_LuInfidelity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = make_rng(4);
  const PureState psi = haar_random_state(n, rng);
  const PureState phi = haar_random_local_unitary(n, rng).apply(psi);
  OptimizerOptions opt;
  opt.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lu_infidelity(psi, phi, opt));
}
BENCHMARK(BM_LuInfidelity)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  Rng rng = make_rng(5);
  const PureState psi = state.range(0) == 0
                            ? haar_random_local_unitary(5, rng).apply(ghz_state(5, 0.8, 0.6))
                            : haar_random_local_unitary(4, rng).apply(canonical_4q_state(1.0, {0.3, 0.6}, {-1.3, -0.6}));
  for (auto _ : state) benchmark::DoNotOptimize(classify(psi));
}
BENCHMARK(BM_Classify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
