#include <benchmark/benchmark.h>

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "ippsim/cmaes.hpp"
#include "ippsim/config.hpp"
#include "ippsim/grid.hpp"
#include "ippsim/objective.hpp"
#include "ippsim/planner.hpp"
#include "ippsim/rng.hpp"
#include "ippsim/sensor.hpp"
#include "ippsim/trajectory.hpp"

namespace {

using namespace ippsim;

OccupancyGrid random_belief(const GridGeometry& geometry, std::uint64_t seed) {
  OccupancyGrid grid(geometry);
  Rng rng(seed);
  for (int i = 0; i < geometry.cell_count(); ++i)
    grid.fuse(geometry.from_flat(i), rng.uniform(0.1, 0.9));
  return grid;
}

void BM_FuseCell(benchmark::State& state) {
  const GridGeometry geometry(50.0, 50.0, 1.0);
  OccupancyGrid grid(geometry);
  for (auto _ : state) {
    grid.fuse({25, 25}, 0.7);
    benchmark::DoNotOptimize(grid);
  }
}
BENCHMARK(BM_FuseCell);

void BM_MapEntropy(benchmark::State& state) {
  const GridGeometry geometry(50.0, 50.0, 1.0);
  const OccupancyGrid grid = random_belief(geometry, 1);
  for (auto _ : state) benchmark::DoNotOptimize(map_entropy(grid));
}
BENCHMARK(BM_MapEntropy);

// Footprint size grows quadratically with altitude; the three arguments are
// the default lattice altitudes.
void BM_InfoGain(benchmark::State& state) {
  const GridGeometry geometry(50.0, 50.0, 1.0);
  const OccupancyGrid belief = random_belief(geometry, 2);
  const SensorModel sensor = SensorModel::defaults();
  const Eigen::Vector3d candidate(25.0, 25.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(info_gain(belief, sensor, candidate));
}
BENCHMARK(BM_InfoGain)->Arg(11)->Arg(22)->Arg(45);

void BM_PlanSegments(benchmark::State& state) {
  Rng rng(3);
  std::vector<Viewpoint> waypoints;
  for (int i = 0; i < 8; ++i)
    waypoints.push_back(
        {{rng.uniform(0.0, 50.0), rng.uniform(0.0, 50.0), rng.uniform(2.0, 45.0)},
         ViewpointKind::global});
  const DynamicLimits limits;
  for (auto _ : state)
    benchmark::DoNotOptimize(plan_segments(waypoints, limits, StartState{}));
}
BENCHMARK(BM_PlanSegments);

void BM_CmaesSphere(benchmark::State& state) {
  CmaesConfig config;
  config.max_evals = static_cast<int>(state.range(0));
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(9, 2.0);
  for (auto _ : state) {
    Rng rng(4);
    benchmark::DoNotOptimize(cmaes_minimize(
        [](const Eigen::VectorXd& x) { return x.squaredNorm(); }, x0, config, rng));
  }
}
BENCHMARK(BM_CmaesSphere)->Arg(300)->Unit(benchmark::kMillisecond);

// Full receding-horizon cycle on the default scenario; 0 = greedy only,
// 1 = greedy plus local refinement.
void BM_Replan(benchmark::State& state) {
  const ScenarioConfig scenario;
  const SensorModel sensor = scenario.sensor();
  const Lattice lattice = build_lattice(scenario.geometry(), sensor, scenario.envelope(),
                                        scenario.lattice_levels);
  PlannerConfig config = scenario.planner_config();
  config.optimizer_mode = static_cast<RefineMode>(state.range(0));
  const OccupancyGrid belief = random_belief(scenario.geometry(), 5);
  for (auto _ : state) {
    PlanState plan_state;
    plan_state.position = Eigen::Vector3d(25.0, 25.0, 45.0);
    Rng rng(6);
    benchmark::DoNotOptimize(replan(plan_state, belief, sensor, lattice, config, rng));
  }
}
BENCHMARK(BM_Replan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
