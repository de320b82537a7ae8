#include <benchmark/benchmark.h>

#include "rmcalc/algops.hpp"
#include "rmcalc/density.hpp"
#include "rmcalc/expr.hpp"
#include "rmcalc/moments.hpp"
#include "rmcalc/oplaws.hpp"
#include "rmcalc/sampler.hpp"

namespace {

using rmcalc::Rational;

rmcalc::BiPoly jacobi(const Rational& c1, const Rational& c2) {
  using namespace rmcalc;
  return inverse_law(shift_law(multiply_wishart(inverse_law(multiply_wishart(identity_law(), c1)), c2), 1));
}

void BM_AlgAddResultant(benchmark::State& state) {
  const auto a = rmcalc::wigner(), b = rmcalc::wishart(Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(rmcalc::alg_add(a, b, rmcalc::AlgPath::Resultant));
}
BENCHMARK(BM_AlgAddResultant)->Unit(benchmark::kMillisecond);

void BM_AlgMulCompanion(benchmark::State& state) {
  const auto a = rmcalc::wigner(), b = rmcalc::wishart(Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(rmcalc::alg_mul(a, b, rmcalc::AlgPath::Companion));
}
BENCHMARK(BM_AlgMulCompanion)->Unit(benchmark::kMillisecond);

void BM_FreeAdd(benchmark::State& state) {
  const auto a = rmcalc::wigner(), b = rmcalc::wishart(2);
  for (auto _ : state) benchmark::DoNotOptimize(rmcalc::free_add(a, b));
}
BENCHMARK(BM_FreeAdd)->Unit(benchmark::kMillisecond);

void BM_FreeMul(benchmark::State& state) {
  const auto a = rmcalc::wishart(Rational(1, 2)), b = rmcalc::wishart(2);
  for (auto _ : state) benchmark::DoNotOptimize(rmcalc::free_mul(a, b));
}
BENCHMARK(BM_FreeMul)->Unit(benchmark::kMillisecond);

void BM_JacobiChain(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(jacobi(Rational(1, 10), Rational(5, 8)));
}
BENCHMARK(BM_JacobiChain)->Unit(benchmark::kMillisecond);

void BM_DensityGrid(benchmark::State& state) {
  const auto L = rmcalc::free_add(rmcalc::wigner(), rmcalc::wishart(Rational(1, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(rmcalc::density_grid(L, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DensityGrid)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_MomentSeries(benchmark::State& state) {
  const auto L = jacobi(Rational(1, 2), Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(rmcalc::moment_series(L, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MomentSeries)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_SampleEnsemble(benchmark::State& state) {
  const auto e = rmcalc::parse_expr("wigner + wishart(1/2)");
  std::uint64_t trial = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(rmcalc::sample_ensemble(e, static_cast<std::size_t>(state.range(0)), 1, trial++));
}
BENCHMARK(BM_SampleEnsemble)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
