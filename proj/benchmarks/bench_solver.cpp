#include <benchmark/benchmark.h>

#include "geodivp/angles.hpp"
#include "geodivp/cartesian_ode.hpp"
#include "geodivp/geodetic_ode.hpp"
#include "geodivp/integrator.hpp"
#include "geodivp/solver.hpp"

using namespace geodivp;

namespace {

const Ellipsoid kWgs84 = Ellipsoid::wgs84();

void BM_CartesianStep(benchmark::State& state) {
  const CartesianState st0 =
      initial_cartesian_state(kWgs84, geodetic_to_cartesian(kWgs84, {30.0, 0.0}), sincosd(60.0));
  StateVec<6> y = st0.vec();
  const CartesianField field{&kWgs84};
  for (auto _ : state) {
    y = rk4_step<6>(field, y, 1e4);
    benchmark::DoNotOptimize(y);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CartesianStep);

void BM_GeodeticStep(benchmark::State& state) {
  StateVec<4> y = initial_geodetic_state(kWgs84, deg_to_rad(30.0), 0.0, sincosd(60.0)).vec();
  const GeodeticField field{&kWgs84};
  for (auto _ : state) {
    y = rk4_step<4>(field, y, 1e4);
    benchmark::DoNotOptimize(y);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GeodeticStep);

// Full solve including per-step diagnostics; items are RK4 steps.
void BM_SolveDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bool geodetic = state.range(1) != 0;
  const DirectProblem prob{{30.0, 0.0}, 60.0, 1e7,
                           geodetic ? CoordinateSystem::geodetic : CoordinateSystem::cartesian, n};
  for (auto _ : state) benchmark::DoNotOptimize(solve_direct(kWgs84, prob));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SolveDirect)->ArgsProduct({{1000, 10000}, {0, 1}})->ArgNames({"n", "geodetic"});

}  // namespace
BENCHMARK_MAIN();
