#include <benchmark/benchmark.h>

#include <vector>

#include "polybe/backward_error.hpp"
#include "polybe/harness.hpp"
#include "polybe/newton.hpp"
#include "polybe/polynomial.hpp"
#include "polybe/rootfind.hpp"
#include "polybe/tropical.hpp"

namespace {

using namespace polybe;

Polynomial bench_poly(int d, double k, std::uint64_t trial) {
  TrialStream s(7, trial);
  return random_poly(d, k, s);
}

void BM_upper_hull(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  TrialStream s(11, 0);
  std::vector<double> v(static_cast<size_t>(n));
  for (double& x : v) x = 40.0 * (s.next_unit() - 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(upper_hull(v));
}
BENCHMARK(BM_upper_hull)->Arg(64)->Arg(512)->Arg(4096);

void BM_tropical_roots(benchmark::State& state) {
  Polynomial p = bench_poly(20, 8.0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(tropical_roots(p));
}
BENCHMARK(BM_tropical_roots);

void BM_aberth(benchmark::State& state) {
  Polynomial p = bench_poly(static_cast<int>(state.range(0)), 8.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p));
}
BENCHMARK(BM_aberth)->Arg(10)->Arg(20)->Arg(40);

void BM_newton_refine(benchmark::State& state) {
  Polynomial p = bench_poly(20, 8.0, 2);
  Cplx x0 = find_roots(p).roots[7];
  for (auto _ : state) benchmark::DoNotOptimize(newton_refine(p, x0));
}
BENCHMARK(BM_newton_refine);

void BM_from_roots_x(benchmark::State& state) {
  Polynomial p = bench_poly(20, 8.0, 3);
  RootSet rs = find_roots(p);
  std::vector<XComplex> roots(rs.roots.begin(), rs.roots.end());
  XComplex lead(p[20]);
  for (auto _ : state) benchmark::DoNotOptimize(from_roots_x(lead, roots));
}
BENCHMARK(BM_from_roots_x);

void BM_tbe(benchmark::State& state) {
  Polynomial p = bench_poly(20, 8.0, 4);
  RootSet roots = find_roots(p);
  for (auto _ : state) benchmark::DoNotOptimize(tbe(p, roots));
}
BENCHMARK(BM_tbe);

void BM_embe_upper_bound(benchmark::State& state) {
  Polynomial p = bench_poly(20, 8.0, 5);
  RootSet roots = find_roots(p);
  for (auto _ : state) benchmark::DoNotOptimize(embe_upper_bound(p, roots));
}
BENCHMARK(BM_embe_upper_bound);

}  // namespace

BENCHMARK_MAIN();
