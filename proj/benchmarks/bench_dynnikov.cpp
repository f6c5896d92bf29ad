#include <benchmark/benchmark.h>

#include <string>

#include "gg/braid.hpp"
#include "gg/dynnikov.hpp"

namespace {

// Pseudo-Anosov word sigma_1 sigma_2^{-1} ... repeated across all generators.
gg::BraidWord alternating(int strands) {
  std::string text = std::to_string(strands) + ";";
  for (int i = 1; i < strands; ++i) text += " " + std::to_string(i % 2 ? i : -i);
  return gg::BraidWord::parse(text);
}

void BM_EntropyEstimate(benchmark::State& state) {
  const gg::BraidWord w = alternating(static_cast<int>(state.range(0)));
  const int iters = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gg::braid_entropy_estimate(w, iters));
  state.SetLabel(std::to_string(w.strands()) + " strands");
}
BENCHMARK(BM_EntropyEstimate)->Args({3, 200})->Args({4, 200})->Args({8, 200})->Args({3, 1000});

void BM_Reducibility(benchmark::State& state) {
  const gg::BraidWord w = gg::BraidWord::parse("4; 1 1 3 -3 2 2");
  for (auto _ : state) benchmark::DoNotOptimize(gg::is_probably_reducible(w));
}
BENCHMARK(BM_Reducibility);

}  // namespace

BENCHMARK_MAIN();
