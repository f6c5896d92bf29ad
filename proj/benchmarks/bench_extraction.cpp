#include <benchmark/benchmark.h>

#include "gg/braid_trace.hpp"
#include "gg/errors.hpp"
#include "gg/random.hpp"

namespace {

gg::DiffeoTrace twist(double area, double step) {
  gg::IntegratorSettings s;
  s.step = step;
  const gg::HamiltonianSystem f[] = {gg::twist_map(gg::disc_region(gg::SpherePoint(0, 0, 1), area), 1.0)};
  const int e[] = {1};
  return gg::DiffeoTrace(f, e, s);
}

void BM_Trajectory(benchmark::State& state) {
  const gg::DiffeoTrace f = twist(0.2, 1.0 / static_cast<double>(state.range(0)));
  const gg::SpherePoint p(0.1, 0.2, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(f.trajectory(p));
}
BENCHMARK(BM_Trajectory)->Arg(100)->Arg(1000);

void BM_Gamma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const gg::DiffeoTrace f = twist(0.3, 0.01).power(static_cast<int>(state.range(1)));
  gg::Rng rng(5);
  const gg::ConfigTuple z = gg::uniform_sample(rng, n);
  const gg::SpherePoint pole(0, 0, -1);
  std::int64_t failures = 0;
  for (auto _ : state) {
    const gg::ConfigTuple x = gg::uniform_sample(rng, n);
    try {
      benchmark::DoNotOptimize(gg::gamma(f, x, z, pole));
    } catch (const gg::Error&) {
      ++failures;
    }
  }
  state.counters["degenerate"] = static_cast<double>(failures);
}
BENCHMARK(BM_Gamma)->Args({4, 1})->Args({4, 8})->Args({8, 1});

}  // namespace

BENCHMARK_MAIN();
