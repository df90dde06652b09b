#pragma once

#include <vector>

#include "ippsim/cmaes.hpp"
#include "ippsim/envelope.hpp"
#include "ippsim/grid.hpp"
#include "ippsim/objective.hpp"
#include "ippsim/sensor.hpp"
#include "ippsim/trajectory.hpp"

namespace ippsim {

enum class RefineMode { none, local, global };

// Penalty weights per unit violation (seconds over budget, meters outside
// the envelope).
inline constexpr double kBudgetPenaltyWeight = 1e3;
inline constexpr double kEnvelopePenaltyWeight = 1e3;

struct RefineOutcome {
  std::vector<Viewpoint> viewpoints;
  double f_initial = 0.0;   // fitness of the unrefined plan
  double f_best = 0.0;      // fitness of the returned plan, <= f_initial
  int dimension = 0;
  int eval_count = 0;
  int generations = 0;
};

// Continuous refinement of a planned viewpoint sequence. Local mode frees the
// intermediate viewpoints; global mode frees all of them. `objectives` holds
// the per-viewpoint objective frozen at selection time; the fitness is the
// negated total simulated gain per second of straight-leg travel time from
// `from` through the sequence, plus penalties for exceeding budget_remaining
// and leaving the envelope. With no optimizable viewpoint the input is
// returned unchanged.
RefineOutcome refine_path(const std::vector<Viewpoint>& viewpoints,
                          const std::vector<ObjectiveKind>& objectives, RefineMode mode,
                          const OccupancyGrid& belief, const SensorModel& sensor,
                          const ClassificationThresholds& thr, const Eigen::Vector3d& from,
                          double budget_remaining_s, const DynamicLimits& limits,
                          const FlightEnvelope& envelope, const CmaesConfig& config, Rng& rng,
                          const CmaesTrace& trace = nullptr);

}  // namespace ippsim
