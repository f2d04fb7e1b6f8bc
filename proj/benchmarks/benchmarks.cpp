#include <benchmark/benchmark.h>

#include "gapforge/gapforge.hpp"

namespace gapforge {
namespace {

FinSet random_set(Rng& rng, std::size_t universe) {
  FinSet s;
  for (std::size_t k = 0; k < universe; ++k) {
    if (chance(rng, 1, 2)) s.insert(k);
  }
  return s;
}

void BM_Excess(benchmark::State& state) {
  Rng rng(1);
  const auto m = static_cast<std::size_t>(state.range(0));
  const FinSet a = random_set(rng, m), b = random_set(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(excess(a, b));
}
BENCHMARK(BM_Excess)->Arg(64)->Arg(1024);

PCondition random_condition(Rng& rng, std::size_t ordinals, std::size_t height) {
  std::map<Ordinal, PWords> entries;
  for (std::size_t k = 0; k < ordinals; ++k) {
    const FinSet upper = random_set(rng, height);
    entries.emplace(Ordinal{static_cast<std::uint32_t>(k / 5), static_cast<std::uint32_t>(k % 5)},
                    PWords{upper & random_set(rng, height), upper});
  }
  return PCondition(height, std::move(entries));
}

void BM_PLeq(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PCondition p = random_condition(rng, n, 32);
  const PCondition q = p_extend(p, 64, {}, {});
  for (auto _ : state) benchmark::DoNotOptimize(p_leq(p, q));
}
BENCHMARK(BM_PLeq)->Arg(5)->Arg(20);

void BM_POracle(benchmark::State& state) {
  Rng rng(3);
  const PCondition p = random_condition(rng, 2, 2);
  const PCondition q = random_condition(rng, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(p_compatible_oracle(p, q));
}
BENCHMARK(BM_POracle)->Arg(2)->Arg(3);

void BM_Pipeline(benchmark::State& state) {
  const SPartition part = alternating_partition(3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline({20, 64, 5, 10}, Ladder::canonical(), part, seed++));
  }
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

void BM_QCompatible(benchmark::State& state) {
  const auto gen = generate_pcc_instance({30, 24, 3}, 4);
  const PccInstance& inst = gen->instance;
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_compatible(gen->ctx, inst.fam1[k % 30], inst.fam2[(k * 7) % 30]));
    ++k;
  }
}
BENCHMARK(BM_QCompatible);

void BM_MaxOrderRectangle(benchmark::State& state) {
  const auto gen = generate_pcc_instance({30, 24, 3}, 5);
  const PccInstance& inst = gen->instance;
  const CompatMatrix m = build_compat_matrix(gen->ctx, inst.t1, inst.fam1, inst.t2, inst.fam2);
  for (auto _ : state) benchmark::DoNotOptimize(max_order_rectangle(m));
}
BENCHMARK(BM_MaxOrderRectangle)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace gapforge

BENCHMARK_MAIN();
