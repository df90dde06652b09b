#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "ippsim/envelope.hpp"
#include "ippsim/grid.hpp"
#include "ippsim/objective.hpp"
#include "ippsim/observer.hpp"
#include "ippsim/optimizer.hpp"
#include "ippsim/sensor.hpp"
#include "ippsim/trajectory.hpp"

namespace ippsim {

struct LatticeLevel {
  double altitude_m = 0.0;
  double spacing_m = 0.0;
};

// Candidate viewpoints at halving altitudes; spacing equals the footprint
// side at each altitude, so each level alone covers the map. Points are
// ordered by (altitude, x, y) ascending, which is also the selection
// tie-break order.
struct Lattice {
  std::vector<Eigen::Vector3d> points;
  std::vector<int> level_of;         // level index per point
  std::vector<LatticeLevel> levels;  // level 0 = alt_max, descending altitude
};

Lattice build_lattice(const GridGeometry& geometry, const SensorModel& sensor,
                      const FlightEnvelope& envelope, int levels);

struct PlannerConfig {
  int horizon = 7;           // viewpoints per replan, globals plus intermediates
  double budget_s = 300.0;
  ObjectiveMode objective_mode = ObjectiveMode::time_varying;
  RefineMode optimizer_mode = RefineMode::local;
  ClassificationThresholds thresholds;
  FlightEnvelope envelope;
  DynamicLimits limits;
  CmaesConfig cmaes;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct PlanState {
  double elapsed_s = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  std::vector<int> visited;  // lattice indices already flown to (fallback bookkeeping)
};

struct Selection {
  Viewpoint viewpoint;
  int lattice_index = -1;
  double gain = 0.0;
  double rate = 0.0;      // gain / allocate_time(from, point)
  bool fallback = false;  // no candidate had positive gain
};

// Greedy rate argmax over the lattice, excluding candidates within 1e-9 m of
// `from` (unless nothing else exists). Ties go to the lower altitude, then
// lexicographic (x, y). When no candidate has positive gain, falls back to
// the nearest point of the lowest level not yet in `visited`; if that level
// is exhausted the visited set is ignored.
Selection select_viewpoint(const OccupancyGrid& belief, const SensorModel& sensor,
                           const Lattice& lattice, ObjectiveKind objective,
                           const ClassificationThresholds& thr, const Eigen::Vector3d& from,
                           const DynamicLimits& limits,
                           const std::vector<int>& visited = {});

// Midpoint of the leg, clamped into the envelope, kind = intermediate.
Viewpoint insert_intermediate(const Viewpoint& prev, const Viewpoint& next,
                              const FlightEnvelope& envelope);

// One replanning cycle's output: viewpoints in flight order (global and
// intermediate alternating) with the objective that scored each one.
struct Plan {
  std::vector<Viewpoint> viewpoints;
  std::vector<ObjectiveKind> objectives;
};

// One cycle of the receding-horizon planner: greedily accumulate horizon
// viewpoints (selection, simulated ML fusion into a planning copy, virtual
// clock advance, midpoint insertion between consecutive globals), then
// refine per optimizer_mode. Marks selected lattice points in state.visited.
Plan replan(PlanState& state, const OccupancyGrid& belief, const SensorModel& sensor,
            const Lattice& lattice, const PlannerConfig& config, Rng& rng,
            MissionObserver* observer = nullptr, int replan_index = 0);

}  // namespace ippsim
