#include "ippsim/objective.hpp"

#include <stdexcept>
#include <vector>

namespace ippsim {

double apply_simulated_observation(OccupancyGrid& belief, const SensorModel& sensor,
                                   const ClassificationThresholds& thr,
                                   const Eigen::Vector3d& position, ObjectiveKind kind) {
  const std::vector<CellObservation> obs = simulate_ml_observation(sensor, belief, position);
  double gained = 0.0;
  for (const CellObservation& o : obs) {
    const double before = belief.probability(o.cell);
    belief.fuse(o.cell, o.p_obs);
    const double after = belief.probability(o.cell);
    if (kind == ObjectiveKind::info) {
      gained += cell_entropy(before) - cell_entropy(after);
    } else {
      gained += (thr.is_unclassified(before) ? 1.0 : 0.0) -
                (thr.is_unclassified(after) ? 1.0 : 0.0);
    }
  }
  return gained;
}

double info_gain(const OccupancyGrid& belief, const SensorModel& sensor,
                 const Eigen::Vector3d& candidate) {
  OccupancyGrid scratch = belief;
  return apply_simulated_observation(scratch, sensor, ClassificationThresholds{}, candidate,
                                     ObjectiveKind::info);
}

double classify_gain(const OccupancyGrid& belief, const SensorModel& sensor,
                     const ClassificationThresholds& thr, const Eigen::Vector3d& candidate) {
  OccupancyGrid scratch = belief;
  return apply_simulated_observation(scratch, sensor, thr, candidate, ObjectiveKind::classify);
}

double gain(const OccupancyGrid& belief, const SensorModel& sensor,
            const ClassificationThresholds& thr, const Eigen::Vector3d& candidate,
            ObjectiveKind kind) {
  return kind == ObjectiveKind::info ? info_gain(belief, sensor, candidate)
                                     : classify_gain(belief, sensor, thr, candidate);
}

ObjectiveKind choose_objective(ObjectiveMode mode, double elapsed_s, double budget_s, Rng& rng) {
  switch (mode) {
    case ObjectiveMode::info:
      return ObjectiveKind::info;
    case ObjectiveMode::classify:
      return ObjectiveKind::classify;
    case ObjectiveMode::time_varying: {
      if (!(budget_s > 0.0)) throw std::invalid_argument("budget must be positive");
      return elapsed_s / budget_s < rng.uniform01() ? ObjectiveKind::info
                                                    : ObjectiveKind::classify;
    }
  }
  throw std::logic_error("unreachable objective mode");
}

}  // namespace ippsim
