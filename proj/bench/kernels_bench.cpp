// Serial reference against the OpenMP kernels on the d = 4 cycle.
#include <benchmark/benchmark.h>

#include "fibrenorm/pipeline.hpp"

using namespace fibrenorm;

namespace {

const CycleSolution& cycle() {
  static const CycleSolution c = [] {
    const PipelineSetup s = default_setup(4);
    return solve_cycle(s, fibonacci_bracket_chain(4, s.hunt_n));
  }();
  return c;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_EscapeGrid(benchmark::State& st) {
  const TruncatedSeries g = cycle_generator(cycle());
  const double r = 2.9;
  const Window w{-r, r, -r, r};
  for (auto _ : st) {
    auto grid = escape_grid([&g](cplx z) { return g.eval_unchecked(z); },
                            [r](cplx z) { return std::abs(z) <= r; }, w, 0.01, 80, exec_of(st));
    benchmark::DoNotOptimize(grid.escape.data());
  }
}

void BM_Jacobian(benchmark::State& st) {
  const SliceMap& f = cycle().map;
  for (auto _ : st) {
    auto j = jacobian_matrix(f, DerivativeMode::analytic, exec_of(st));
    benchmark::DoNotOptimize(j.data());
  }
}

void BM_Hausdorff(benchmark::State& st) {
  const CycleSolution& c = cycle();
  ShapeOptions o;
  const ClosedCurve gamma0 = circle_curve(0.0, default_gamma0_radius(c), 512);
  const PointCloud k = cycle_julia(c, gamma0, o);
  const PointCloud inside = grid_inside(gamma0, Window{-3, 3, -3, 3}, o.resolution);
  for (auto _ : st) benchmark::DoNotOptimize(hausdorff_distance(inside, k, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_EscapeGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jacobian)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hausdorff)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
