#include "ippsim/mission.hpp"

namespace ippsim {
namespace {

constexpr double kCoincident = 1e-9;

MeasurementRow metrics_row(double t, const OccupancyGrid& belief, const GroundTruthMap& truth,
                           const ClassificationThresholds& thr) {
  return {t, map_entropy(belief), classification_rate(belief, thr),
          f1_score(belief, truth, thr)};
}

void record_initial(TrialRecord& rec, const OccupancyGrid& belief, const GroundTruthMap& truth,
                    const PlannerConfig& config, const Eigen::Vector3d& start,
                    MissionObserver* observer) {
  const MeasurementRow row = metrics_row(0.0, belief, truth, config.thresholds);
  rec.events.push_back(row);
  if (observer)
    observer->on_measurement(
        {0.0, start, 0, row.entropy_bits, row.classification_rate, row.f1});
}

// Executes as many legs of `path` as the budget allows, fusing a noisy
// observation at each arrival. Returns the number of legs flown.
int execute_path(const PolynomialPath& path, const std::vector<Viewpoint>& waypoints,
                 const GroundTruthMap& truth, OccupancyGrid& belief, const SensorModel& sensor,
                 const PlannerConfig& config, PlanState& state, Rng& rng, TrialRecord& rec,
                 MissionObserver* observer, int replan_index) {
  const double t0 = state.elapsed_s;
  int legs = 0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const double leg_s = path.arrival_time(i) - path.arrival_time(i - 1);
    if (state.elapsed_s + leg_s > config.budget_s) break;
    state.elapsed_s += leg_s;
    state.position = waypoints[i].position;
    ++legs;

    const std::vector<CellObservation> obs =
        observe(sensor, truth, waypoints[i].position, rng);
    for (const CellObservation& o : obs) belief.fuse(o.cell, o.p_obs);

    const MeasurementRow row =
        metrics_row(state.elapsed_s, belief, truth, config.thresholds);
    rec.events.push_back(row);
    if (observer)
      observer->on_measurement({state.elapsed_s, waypoints[i].position,
                                static_cast<int>(obs.size()), row.entropy_bits,
                                row.classification_rate, row.f1});
  }
  if (observer) observer->on_path({replan_index, t0, legs, &path});
  return legs;
}

}  // namespace

TrialRecord run_mission(const GroundTruthMap& truth, OccupancyGrid& belief,
                        const SensorModel& sensor, const Lattice& lattice,
                        const PlannerConfig& config, const Eigen::Vector3d& start, Rng& rng,
                        MissionObserver* observer) {
  config.validate();
  if (!config.envelope.contains(start, 1e-9))
    throw std::invalid_argument("mission start outside flight envelope");

  TrialRecord rec;
  rec.seed = config.rng_seed;
  record_initial(rec, belief, truth, config, start, observer);

  PlanState state;
  state.position = start;
  int replan_index = 0;
  while (state.elapsed_s < config.budget_s) {
    const Plan plan = replan(state, belief, sensor, lattice, config, rng, observer,
                             replan_index);
    std::vector<Viewpoint> waypoints;
    waypoints.reserve(plan.viewpoints.size() + 1);
    waypoints.push_back({state.position, ViewpointKind::global});
    waypoints.insert(waypoints.end(), plan.viewpoints.begin(), plan.viewpoints.end());

    const PolynomialPath path =
        plan_segments(waypoints, config.limits, StartState{state.velocity});
    const int legs = execute_path(path, waypoints, truth, belief, sensor, config, state, rng,
                                  rec, observer, replan_index);
    ++replan_index;
    if (legs + 1 < static_cast<int>(waypoints.size())) break;  // budget stopped the plan
  }
  return rec;
}

TrialRecord run_scripted_mission(const GroundTruthMap& truth, OccupancyGrid& belief,
                                 const SensorModel& sensor,
                                 const std::vector<Viewpoint>& waypoints,
                                 const PlannerConfig& config, const Eigen::Vector3d& start,
                                 Rng& rng, MissionObserver* observer) {
  config.validate();
  if (!config.envelope.contains(start, 1e-9))
    throw std::invalid_argument("mission start outside flight envelope");

  TrialRecord rec;
  rec.seed = config.rng_seed;
  record_initial(rec, belief, truth, config, start, observer);
  if (waypoints.empty()) return rec;

  std::vector<Viewpoint> full;
  full.reserve(waypoints.size() + 1);
  full.push_back({start, ViewpointKind::global});
  for (const Viewpoint& vp : waypoints) {
    if ((vp.position - full.back().position).norm() <= kCoincident) continue;
    full.push_back(vp);
  }
  if (full.size() < 2) return rec;

  PlanState state;
  state.position = start;
  const PolynomialPath path = plan_segments(full, config.limits, StartState{});
  execute_path(path, full, truth, belief, sensor, config, state, rng, rec, observer, 0);
  return rec;
}

}  // namespace ippsim
