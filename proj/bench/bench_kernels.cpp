#include <benchmark/benchmark.h>

#include "hkforge/contour.hpp"
#include "hkforge/diagram.hpp"
#include "hkforge/sampling.hpp"

using namespace hkforge;

namespace {
struct DiagramFixture {
  Diagram d;
  TensorMap t;
  DiagramFixture() {
    auto rng = make_rng(1, "bench");
    t = standard_tensors(random_o2(rng), random_o4(rng));
    d = o4_double_polygon(6);  // 24 slots, 4096 index assignments
  }
};
const DiagramFixture& diagram_fixture() {
  static DiagramFixture f;
  return f;
}

LoopSamples loop_samples(int n) {
  auto rng = make_rng(2, "bench");
  auto c = build_contour(ContourKind::gamma_a, std::nullopt, coefficients_to_roots(random_o4(rng)));
  return sample_loop_serial(c.loops.at(0), n);
}

cplx integrand(cplx z, cplx sp) { return z * z / sp; }
}  // namespace

static void BM_ContractSerial(benchmark::State& st) {
  const auto& f = diagram_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(contract_diagram_serial(f.d, f.t));
}
static void BM_ContractParallel(benchmark::State& st) {
  const auto& f = diagram_fixture();
  for (auto _ : st) benchmark::DoNotOptimize(contract_diagram_parallel(f.d, f.t));
}
static void BM_TrapezoidSerial(benchmark::State& st) {
  auto s = loop_samples(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(trapezoid_serial(s, integrand));
}
static void BM_TrapezoidParallel(benchmark::State& st) {
  auto s = loop_samples(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(trapezoid_parallel(s, integrand));
}
static void BM_SampleSerial(benchmark::State& st) {
  auto rng = make_rng(2, "bench");
  auto c = build_contour(ContourKind::gamma_a, std::nullopt, coefficients_to_roots(random_o4(rng)));
  for (auto _ : st) benchmark::DoNotOptimize(sample_loop_serial(c.loops.at(0), int(st.range(0))));
}
static void BM_SampleParallel(benchmark::State& st) {
  auto rng = make_rng(2, "bench");
  auto c = build_contour(ContourKind::gamma_a, std::nullopt, coefficients_to_roots(random_o4(rng)));
  for (auto _ : st) benchmark::DoNotOptimize(sample_loop_parallel(c.loops.at(0), int(st.range(0))));
}

BENCHMARK(BM_ContractSerial);
BENCHMARK(BM_ContractParallel);
BENCHMARK(BM_TrapezoidSerial)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_TrapezoidParallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_SampleSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SampleParallel)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
