#include <benchmark/benchmark.h>

#include "permlab/correlations.hpp"
#include "permlab/estimators.hpp"
#include "permlab/haar.hpp"
#include "permlab/permanent.hpp"
#include "permlab/phase.hpp"
#include "permlab/rng.hpp"

namespace {

using namespace permlab;

ComplexMatrix haar_submatrix(std::size_t n, std::size_t m, std::uint64_t seed) {
  RandomStream rng(seed);
  TransmissionMatrix t(haar_random_unitary(m, rng));
  return submatrix(t, ChannelSet::first_n(n, m), ChannelSet::first_n(n, m));
}

void BM_PermanentGlynn(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix sub = haar_submatrix(n, 2 * n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(permanent_glynn(sub));
  }
}
BENCHMARK(BM_PermanentGlynn)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_GlynnPolynomial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix sub = haar_submatrix(n, 4 * n, 2);
  RandomStream rng(3);
  const PhaseSampler sampler(PhaseConfig::continuous());
  std::vector<Complex> z(n);
  for (auto _ : state) {
    sampler.fill(z, rng);
    benchmark::DoNotOptimize(detail::glynn_polynomial_kernel(sub.data().data(), n, z.data()));
  }
}
BENCHMARK(BM_GlynnPolynomial)->Arg(6)->Arg(10)->Arg(20);

void BM_PermSquaredQcp(benchmark::State& state) {
  const std::size_t n = 6;
  const ComplexMatrix sub = haar_submatrix(n, 4 * n, 4);
  const bool continuous = state.range(0) != 0;
  const EnsembleConfig cfg(1000, 10,
                           continuous ? PhaseConfig::continuous() : PhaseConfig::discrete(2), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_perm_squared_qcp(sub, cfg));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(cfg.total_samples()));
}
BENCHMARK(BM_PermSquaredQcp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CombinedCorrelationSample(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = 6 * n;
  RandomStream rng(6);
  TransmissionMatrix t(haar_random_unitary(m, rng));
  const CorrelationSpec spec(m, ChannelSet::first_n(n, m), ChannelSet({m - 1}, m));
  const EnsembleConfig cfg(500, 2, PhaseConfig::continuous(), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(combined_correlation_qcp(t, spec, cfg));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(cfg.total_samples()));
}
BENCHMARK(BM_CombinedCorrelationSample)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_HaarUnitary(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  RandomStream rng(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_random_unitary(m, rng));
  }
}
BENCHMARK(BM_HaarUnitary)->Arg(24)->Arg(48)->Arg(180)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
