#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sodbench/metrics.hpp"

using namespace sodbench;

namespace {

struct Pair {
  SaliencyMap sal;
  BinaryMask gt;
};

Pair make_pair(int side) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.15);
  const Extent e{side, side};
  std::vector<std::uint8_t> bits(e.pixels());
  std::vector<double> sal(e.pixels());
  const double c = side / 2.0, r = side / 4.0;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const auto k = static_cast<std::size_t>(y * side + x);
      const double d = std::hypot(x - c, y - c) / r;
      bits[k] = d <= 1.0;
      sal[k] = std::clamp(1.1 - 0.8 * d + noise(rng), 0.0, 1.0);
    }
  }
  return {SaliencyMap(e, sal), BinaryMask(e, bits)};
}

void BM_EvaluatePair(benchmark::State& state) {
  const Pair p = make_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_pair(p.sal, p.gt));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EvaluatePair)->Arg(224)->Arg(352);

void BM_ConfusionCurve(benchmark::State& state) {
  const Pair p = make_pair(224);
  for (auto _ : state) benchmark::DoNotOptimize(confusion_curve(p.sal, p.gt));
}
BENCHMARK(BM_ConfusionCurve);

void BM_SMeasure(benchmark::State& state) {
  const Pair p = make_pair(224);
  for (auto _ : state) benchmark::DoNotOptimize(s_measure(p.sal, p.gt));
}
BENCHMARK(BM_SMeasure);

void BM_EMax(benchmark::State& state) {
  const Pair p = make_pair(224);
  for (auto _ : state) benchmark::DoNotOptimize(e_max(p.sal, p.gt));
}
BENCHMARK(BM_EMax);

}  // namespace

BENCHMARK_MAIN();
