#include <benchmark/benchmark.h>

#include "cuspk3/doublecover.hpp"
#include "cuspk3/kummer.hpp"
#include "cuspk3/liealg.hpp"
#include "cuspk3/resgraph.hpp"

using namespace cuspk3;

namespace {

void BM_FieldMul(benchmark::State& state) {
  auto els = elements(8);
  for (auto _ : state) {
    FieldElem acc = FieldElem::one(8);
    for (auto x : els) acc = acc * x + x;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul);

void BM_ClassifyQuadPoint(benchmark::State& state) {
  CoverEq eq = quad_point_equation({FieldElem::one(), FieldElem::omega()}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(blowup_classify(eq, FieldElem::zero(), FieldElem::zero()));
}
BENCHMARK(BM_ClassifyQuadPoint);

void BM_ClassifyElliptic(benchmark::State& state) {
  CoverEq eq = fixed_point_equation({FieldElem::zero(), FieldElem::zero()}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(blowup_classify(eq, FieldElem::zero(), FieldElem::zero()));
}
BENCHMARK(BM_ClassifyElliptic);

void BM_FundamentalCycleE8(benchmark::State& state) {
  ResGraph g = dynkin_graph({Family::E, 8, false});
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_cycle(g));
}
BENCHMARK(BM_FundamentalCycleE8);

void BM_SurfaceReport(benchmark::State& state) {
  SurfaceParams p = make_params(4, FieldElem::one(), FieldElem::from_mask(4, 2));
  for (auto _ : state) benchmark::DoNotOptimize(surface_report(p));
}
BENCHMARK(BM_SurfaceReport)->Unit(benchmark::kMillisecond);

void BM_SweepF4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep(2, 1));
}
BENCHMARK(BM_SweepF4)->Unit(benchmark::kMillisecond);

void BM_ReplayTables(benchmark::State& state) {
  BlowupTable d8 = load_blowup_table("d8"), e8 = load_blowup_table("e8");
  for (auto _ : state) {
    benchmark::DoNotOptimize(replay_table(d8));
    benchmark::DoNotOptimize(replay_table(e8));
  }
}
BENCHMARK(BM_ReplayTables);

void BM_LieAxiomsF4(benchmark::State& state) {
  RLieAlg g = cusp_lie_algebra();
  for (auto _ : state) benchmark::DoNotOptimize(verify_pmap_axioms(g, 2));
}
BENCHMARK(BM_LieAxiomsF4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
