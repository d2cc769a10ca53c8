#include <benchmark/benchmark.h>

#include "nsgap/embed.hpp"
#include "nsgap/john.hpp"
#include "nsgap/linalg.hpp"
#include "nsgap/rayleigh.hpp"

namespace {

using namespace nsgap;

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.normal();
  return m;
}

void BM_Jacobi(benchmark::State& state) {
  const Matrix m = random_symmetric(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(m));
}
BENCHMARK(BM_Jacobi)->Arg(8)->Arg(32)->Arg(128);

void BM_GapHeuristic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto chain = random_reversible_chain(n, rng);
  const auto space = MetricSpace::lp(kInfinity, 4);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_heuristic(chain, space, 2.0));
}
BENCHMARK(BM_GapHeuristic)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  Rng rng(3);
  const auto chain = random_reversible_chain(static_cast<std::size_t>(state.range(0)), rng);
  Matrix d(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) d(i, j) = i == j ? 0.0 : 1.0 + 0.1 * static_cast<double>((i + j) % 3);
  const auto space = MetricSpace::finite(d);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_bruteforce(chain, space, 2.0));
}
BENCHMARK(BM_BruteForce)->Arg(4)->Arg(6);

void BM_Mvee(benchmark::State& state) {
  const auto pts = cube_vertices(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mvee(pts));
}
BENCHMARK(BM_Mvee)->Arg(3)->Arg(6)->Arg(8);

void BM_Embed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      d(i, j) = static_cast<double>(std::min(k, n - k));
    }
  const Vector mu(n, 1.0 / static_cast<double>(n));
  for (auto _ : state) benchmark::DoNotOptimize(average_embed_hilbert(d, mu, 1.0));
}
BENCHMARK(BM_Embed)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
