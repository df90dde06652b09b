#pragma once

#include <Eigen/Core>

#include "ippsim/grid.hpp"
#include "ippsim/rng.hpp"
#include "ippsim/sensor.hpp"

namespace ippsim {

enum class ObjectiveKind { info, classify };

enum class ObjectiveMode { info, classify, time_varying };

// Fuses a simulated maximum-likelihood observation at `position` into
// `belief` and returns the gain it produced: entropy reduction in bits for
// the info objective, reduction of the unclassified-cell count for the
// classification objective. Only footprint cells change, so the gain is
// accumulated per fused cell rather than by re-summing the map.
double apply_simulated_observation(OccupancyGrid& belief, const SensorModel& sensor,
                                   const ClassificationThresholds& thr,
                                   const Eigen::Vector3d& position, ObjectiveKind kind);

// Entropy reduction (bits) from one simulated ML observation, on a scratch
// copy of the belief.
double info_gain(const OccupancyGrid& belief, const SensorModel& sensor,
                 const Eigen::Vector3d& candidate);

// Unclassified-count reduction from one simulated ML observation, on a
// scratch copy. May be negative when fusion pushes classified cells back
// between the thresholds.
double classify_gain(const OccupancyGrid& belief, const SensorModel& sensor,
                     const ClassificationThresholds& thr, const Eigen::Vector3d& candidate);

double gain(const OccupancyGrid& belief, const SensorModel& sensor,
            const ClassificationThresholds& thr, const Eigen::Vector3d& candidate,
            ObjectiveKind kind);

// Time-varying tradeoff rule: draws u ~ Uniform[0,1) and picks the info
// objective while elapsed/budget < u, so the info share of picks decays
// linearly from 1 at t=0 to 0 at t=B. Fixed modes ignore the clock.
ObjectiveKind choose_objective(ObjectiveMode mode, double elapsed_s, double budget_s, Rng& rng);

}  // namespace ippsim
