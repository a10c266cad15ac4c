#include <benchmark/benchmark.h>

#include "polyincl/algrec.hpp"
#include "polyincl/kernels.hpp"
#include "polyincl/solver.hpp"

using namespace polyincl;

namespace {

ContainmentProblem problem(const char* p, const char* q) {
  return ContainmentProblem::build(make_solid(parse_solid(p), Real(1)), make_solid(parse_solid(q), Real(1)));
}

// Inner LP over an Euler grid: the bulk of a global solve.
template <bool Parallel>
void BM_ScaleBatch(benchmark::State& state) {
  const auto prob = problem("D", "I");
  const auto rots = kernels::rotation_grid(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto v = Parallel ? kernels::scale_batch_parallel(prob, rots) : kernels::scale_batch_serial(prob, rots);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rots.size()));
}

// Local ascent from a handful of grid points.
template <bool Parallel>
void BM_PolishBatch(benchmark::State& state) {
  const auto prob = problem("T", "I");
  const auto grid = kernels::rotation_grid(3, 8);
  std::vector<Orientation> starts(grid.begin(), grid.begin() + state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? kernels::polish_batch_parallel(prob, starts, {}) : kernels::polish_batch_serial(prob, starts, {});
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SolveGlobal(benchmark::State& state) {
  const auto p = make_solid(parse_solid("C"), Real(1)), q = make_solid(parse_solid("I"), Real(1));
  SolveConfig cfg;
  cfg.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_global(p, q, cfg).best.sigma);
}

void BM_MinPolyDegree16(benchmark::State& state) {
  // (15 - sqrt5)/22 to 350 digits searched up to degree 16.
  PrecisionScope scope(370);
  const std::string x = to_decimal((15 - sqrt(Real(5))) / 22, 350);
  for (auto _ : state) benchmark::DoNotOptimize(min_poly_guess(x, 16, 12));
}

}  // namespace

BENCHMARK_TEMPLATE(BM_ScaleBatch, false)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ScaleBatch, true)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_PolishBatch, false)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_PolishBatch, true)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveGlobal)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinPolyDegree16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
