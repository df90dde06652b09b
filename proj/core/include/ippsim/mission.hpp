#pragma once

#include <Eigen/Core>
#include <vector>

#include "ippsim/metrics.hpp"
#include "ippsim/observer.hpp"
#include "ippsim/planner.hpp"

namespace ippsim {

// Receding-horizon mission: alternate replanning and plan execution until the
// next leg would overrun the budget. At every viewpoint arrival a noisy
// observation of the truth is fused into `belief` and a metrics row is
// recorded; the record always starts with a row at t=0 and never contains a
// time beyond the budget.
TrialRecord run_mission(const GroundTruthMap& truth, OccupancyGrid& belief,
                        const SensorModel& sensor, const Lattice& lattice,
                        const PlannerConfig& config, const Eigen::Vector3d& start, Rng& rng,
                        MissionObserver* observer = nullptr);

// Same execution and budget accounting over a fixed precomputed viewpoint
// list (the coverage baseline): one polynomial path, no replanning.
TrialRecord run_scripted_mission(const GroundTruthMap& truth, OccupancyGrid& belief,
                                 const SensorModel& sensor,
                                 const std::vector<Viewpoint>& waypoints,
                                 const PlannerConfig& config, const Eigen::Vector3d& start,
                                 Rng& rng, MissionObserver* observer = nullptr);

}  // namespace ippsim
