#include <benchmark/benchmark.h>

#include "mapdomain/compat_oracle.hpp"
#include "mapdomain/conjunction.hpp"
#include "mapdomain/dynamics.hpp"
#include "mapdomain/reduced_map.hpp"

using namespace mapdomain;

static void min_eigenvalue_4x4(benchmark::State& state) {
  TwoQubitState s;
  s.a = {0.1, 0.3, -0.2};
  s.b = {0.05, -0.1, 0.2};
  s.t[0][0] = 0.4;
  s.t[1][2] = -0.3;
  s.t[2][1] = 0.1;
  const Matrix4 rho = density_from_params(s);
  for (auto _ : state) benchmark::DoNotOptimize(min_eigenvalue(rho));
}
BENCHMARK(min_eigenvalue_4x4);

static void sup_norm_closed_form(benchmark::State& state) {
  const BlochVector a{0.2, -0.4, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm_over_time(0.35, -0.25, a));
}
BENCHMARK(sup_norm_closed_form);

static void sup_norm_search(benchmark::State& state) {
  const BlochVector a{0.2, -0.4, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm_by_search(0.35, -0.25, a, static_cast<int>(state.range(0))));
}
BENCHMARK(sup_norm_search)->Arg(4096)->Arg(100000);

static void unitary_crosscheck(benchmark::State& state) {
  TwoQubitState s;
  s.a = {0.1, 0.3, -0.2};
  s.t[0][0] = 0.4;
  s.t[1][0] = -0.2;
  for (auto _ : state) benchmark::DoNotOptimize(crosscheck(s, 1.3));
}
BENCHMARK(unitary_crosscheck);

static void brute_force_growth(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_max(0.6, 0.2, static_cast<int>(state.range(0)), 128));
}
BENCHMARK(brute_force_growth)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void oracle_feasibility(benchmark::State& state) {
  const BlochVector a{0.0, 0.3, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(feasibility_search(a, 0.4, 0.0));
}
BENCHMARK(oracle_feasibility)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
