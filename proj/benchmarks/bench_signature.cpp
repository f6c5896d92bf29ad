#include <benchmark/benchmark.h>

#include "gg/braid.hpp"
#include "gg/random.hpp"
#include "gg/signature.hpp"

namespace {

gg::BraidWord random_word(int strands, int length, std::uint64_t seed) {
  gg::Rng rng(seed);
  std::vector<int> letters;
  for (int i = 0; i < length; ++i) {
    const int g = rng.uniform_int(1, strands - 1);
    letters.push_back(rng.uniform() < 0.5 ? g : -g);
  }
  return gg::BraidWord(strands, letters);
}

void BM_SignatureOfClosure(benchmark::State& state) {
  const gg::BraidWord w = random_word(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(gg::signature_of_closure(w));
}
BENCHMARK(BM_SignatureOfClosure)->Args({3, 10})->Args({4, 40})->Args({6, 100})->Args({8, 300});

}  // namespace

BENCHMARK_MAIN();
