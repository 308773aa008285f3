// Library kernels (shell-blocked, OpenMP) against the serial reference
// implementations they are tested against.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "balltrace/dixmier.hpp"
#include "balltrace/operator.hpp"
#include "balltrace/reference.hpp"
#include "balltrace/spectral.hpp"

using namespace balltrace;

namespace {

const PolySymbol& symbol() {
  static const PolySymbol f = parse_symbol("z1 + 2*z2*conj(z1) - conj(z2)^2", 2);
  return f;
}

void BM_toeplitz(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(toeplitz(symbol(), 2.5, n));
}

void BM_toeplitz_reference(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reference::toeplitz_dense(symbol(), 2.5, n));
}

void BM_compose(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto a = toeplitz(symbol(), 2.5, n), b = toeplitz(symbol().conj(), 2.5, n);
  for (auto _ : st) benchmark::DoNotOptimize(compose(a, b));
}

void BM_compose_reference(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto a = reference::toeplitz_dense(symbol(), 2.5, n), b = reference::toeplitz_dense(symbol().conj(), 2.5, n);
  for (auto _ : st) benchmark::DoNotOptimize(reference::compose_dense(a, b));
}

void BM_eigen(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto h = hankel_gram(parse_symbol("z1 + z2", 2), 2.0, n + 2);
  for (auto _ : st) benchmark::DoNotOptimize(hermitian_eigen(h, 0, n));
}

void BM_eigen_reference(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto h = hankel_gram(parse_symbol("z1 + z2", 2), 2.0, n + 2);
  const DenseBlock w = dense_window(h, n);
  for (auto _ : st) benchmark::DoNotOptimize(reference::hermitian_eigenvalues(w));
}

// range(1) is the OpenMP thread count
void BM_curves(benchmark::State& st) {
  const ClosedFormSpectrum src(2, 2.0, {MultiIndex{1, 0}, MultiIndex{0, 1}}, 1.0, 0, static_cast<int>(st.range(0)));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(partial_sum_curves(src));
  omp_set_num_threads(saved);
}

void BM_curves_reference(benchmark::State& st) {
  const ClosedFormSpectrum src(2, 2.0, {MultiIndex{1, 0}, MultiIndex{0, 1}}, 1.0, 0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::materialize(src));
}

}  // namespace

BENCHMARK(BM_toeplitz)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_toeplitz_reference)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compose_reference)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eigen)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eigen_reference)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curves)->ArgsProduct({{2000, 8000}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curves_reference)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
