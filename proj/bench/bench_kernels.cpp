// Serial reference vs OpenMP for the hot kernels. The second benchmark
// argument selects the path: 0 serial, 1 OpenMP.
#include <benchmark/benchmark.h>

#include "clab/inequality.hpp"
#include "clab/mip.hpp"
#include "clab/oracle.hpp"
#include "clab/segment.hpp"

using namespace clab;

namespace {

Exec mode(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) {
  st.SetLabel(st.range(1) ? "openmp x" + std::to_string(max_threads()) : "serial");
}

void BM_OpNorm(benchmark::State& st) {
  const Operator2x2 t{0.9, 0.3, -0.2, 0.7, Exponent(3.0), Exponent(1.5)};
  NormOptions o;
  o.scan_points = static_cast<int>(st.range(0));
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(op_norm(t, o).norm);
  label(st);
}

void BM_SStar(benchmark::State& st) {
  const LpVector x = unit_from_first(0.8, Exponent(3.0)), y = unit_from_first(0.7, Exponent(1.7));
  SegmentOptions o;
  o.per_decade = static_cast<int>(st.range(0));
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(s_star(x, y, Sign::Plus, o).value);
  label(st);
}

void BM_MarginSweep(benchmark::State& st) {
  const auto grid = margin_grid(100, static_cast<int>(st.range(0)), 64);
  const Exponent p(1.3), q(1.7);
  for (auto _ : st) {
    const SweepResult r = sweep(grid, [&](double x) { return lemma3_margin(p, q, 0.55, x).margin; }, mode(st));
    benchmark::DoNotOptimize(r.min_margin);
  }
  label(st);
}

void BM_Oracle(benchmark::State& st) {
  const Exponent p(3.0), q(1.5);
  const Operator2x2 t = tensor(duality_map(unit_from_first(0.8, p)), LpVector{1, 0, q}, p, q);
  OracleOptions o;
  o.n_directions = static_cast<int>(st.range(0));
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(extremality_probe(t, o).verdict);
  label(st);
}

void BM_DensityNet(benchmark::State& st) {
  const Exponent p(3.0), q(1.5);
  const LpVector x = unit_from_first(0.7, p), y = unit_from_first(0.6, dual_space(p, q).q);
  ProbeOptions o;
  o.n_samples = 20;
  o.family_grid = 32;
  o.net_points = static_cast<int>(st.range(0));
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(density_probe(p, q, x, y, o).net_extreme_hits);
  label(st);
}

}  // namespace

BENCHMARK(BM_OpNorm)->ArgsProduct({{4096, 65536}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SStar)->ArgsProduct({{64, 512}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MarginSweep)->ArgsProduct({{2001, 20001}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Oracle)->ArgsProduct({{720}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityNet)->ArgsProduct({{100}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
