#include "sofic/coupling.hpp"
#include "sofic/dpp.hpp"
#include "sofic/forests.hpp"
#include "sofic/group_ring.hpp"
#include "sofic/operators.hpp"
#include "sofic/random_matrix.hpp"
#include "sofic/schreier.hpp"

#include <benchmark/benchmark.h>

using namespace sofic;

static void BM_ExactDistribution(benchmark::State& state) {
  Rng rng(1);
  const DeterminantalMeasure m(random_contraction(static_cast<std::size_t>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(exact_distribution(m));
}
BENCHMARK(BM_ExactDistribution)->DenseRange(4, 12, 4);

static void BM_Sample(benchmark::State& state) {
  Rng rng(2);
  const DeterminantalMeasure m(random_contraction(static_cast<std::size_t>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(sample(m, rng));
}
BENCHMARK(BM_Sample)->Arg(8)->Arg(32)->Arg(128);

static void BM_TransferCurrent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = torus_graph(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_current(g));
}
BENCHMARK(BM_TransferCurrent)->Arg(4)->Arg(8)->Arg(12);

static void BM_FsfKernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = torus_graph(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(fsf_kernel(g, 4));
}
BENCHMARK(BM_FsfKernel)->Arg(5)->Arg(8)->Arg(12);

static void BM_Wilson(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = torus_graph(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(wilson_sample(g, rng));
}
BENCHMARK(BM_Wilson)->Arg(8)->Arg(32);

static void BM_Dbar(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = exact_distribution(DeterminantalMeasure(random_contraction(n, rng)));
  const auto b = exact_distribution(DeterminantalMeasure(random_contraction(n, rng)));
  for (auto _ : state) benchmark::DoNotOptimize(dbar(a, b));
}
BENCHMARK(BM_Dbar)->DenseRange(4, 8, 2);

static void BM_MonotoneCoupling(benchmark::State& state) {
  Rng rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto [q1, q2] = random_dominated_pair(n, rng);
  const auto a = exact_distribution(DeterminantalMeasure(q1));
  const auto b = exact_distribution(DeterminantalMeasure(q2));
  for (auto _ : state) benchmark::DoNotOptimize(monotone_coupling(a, b));
}
BENCHMARK(BM_MonotoneCoupling)->DenseRange(4, 10, 3);

static void BM_KernelFraction(benchmark::State& state) {
  Rng rng(6);
  const auto g = random_schreier(2, static_cast<std::size_t>(state.range(0)), rng);
  const auto a = GroupRingElement::parse("(1 + s + t)*(1 + S + T)");
  for (auto _ : state) benchmark::DoNotOptimize(kernel_fraction(a, g));
}
BENCHMARK(BM_KernelFraction)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
