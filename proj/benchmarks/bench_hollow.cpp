#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "hollow/complex.hpp"
#include "hollow/homology.hpp"
#include "hollow/net.hpp"
#include "hollow/reduction.hpp"

using namespace hollow;

namespace {

void BM_BuildCubical(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  const EpsNet net = cumulative_net(m, 3);
  for (auto _ : state) {
    CubicalComplex cx = build_cubical(net.points, m, 3);
    benchmark::DoNotOptimize(cx.cells[2].data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(net.points.size()));
}
BENCHMARK(BM_BuildCubical)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_RankBoundary2(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  const CubicalComplex cx = build_cubical(cumulative_net(m, 3).points, m, 3);
  const BoundaryMatrix b = boundary_matrix(cx, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_gf2(b));
  }
  state.SetLabel(std::to_string(b.rows) + "x" + std::to_string(b.cols));
}
BENCHMARK(BM_RankBoundary2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Betti(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  const CubicalComplex cx = build_cubical(boundary_net(m, 3).points, m, 3);
  for (auto _ : state) {
    BettiVector bv = betti(cx);
    benchmark::DoNotOptimize(bv.euler);
  }
}
BENCHMARK(BM_Betti)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CoveringRadius(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  const EpsNet net = cumulative_net(m, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(covering_radius_sq(net, m + 2));
  }
}
BENCHMARK(BM_CoveringRadius)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ReductionRound(benchmark::State& state) {
  const auto budget = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    ReductionReport r = run_F(halt_after(25), 0, 10, budget, 3);
    benchmark::DoNotOptimize(r.misclassified);
  }
}
BENCHMARK(BM_ReductionRound)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
