// SPDX-License-Identifier: Apache-2.0
// Microbenchmarks for the two normal-equation solvers across system sizes.
// The CLI `bench` subcommand produces the same comparison as a CSV artifact;
// this binary is for interactive profiling.

#include <benchmark/benchmark.h>

#include <linkpredict/linalg.hpp>
#include <linkpredict/rng.hpp>

namespace {

using namespace linkpredict;

struct System {
  Matrix e;
  Vector r;
};

System make_system(std::size_t m) {
  Rng rng(Rng::derive(42, 1000 + m));
  System s;
  s.e = random_spd(m, rng, 0.5, 5.0);
  s.r.resize(m);
  for (auto& v : s.r) v = rng.uniform01();
  return s;
}

void BM_SolveExact(benchmark::State& state) {
  const System s = make_system(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Vector x = gauss_solve(s.e, s.r);
    benchmark::DoNotOptimize(x.data());
    benchmark::ClobberMemory();
  }
}

void BM_SolveGd(benchmark::State& state) {
  const System s = make_system(static_cast<std::size_t>(state.range(0)));
  GdOptions opt;
  opt.max_iters = static_cast<std::size_t>(state.range(1));
  opt.grad_tol = 0.0;
  for (auto _ : state) {
    GdResult res = gd_minimize(s.e, s.r, opt);
    benchmark::DoNotOptimize(res.x.data());
    benchmark::ClobberMemory();
  }
}

}  // namespace

BENCHMARK(BM_SolveExact)->Arg(4)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_SolveGd)
    ->Args({4, 100})
    ->Args({8, 100})
    ->Args({16, 100})
    ->Args({32, 100})
    ->Args({4, 1000})
    ->Args({32, 1000});

BENCHMARK_MAIN();
