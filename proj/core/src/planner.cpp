#include "ippsim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ippsim {

namespace {
constexpr double kCoincident = 1e-9;
}

Lattice build_lattice(const GridGeometry& geometry, const SensorModel& sensor,
                      const FlightEnvelope& envelope, int levels) {
  if (levels < 1) throw std::invalid_argument("lattice needs at least one level");
  envelope.validate();

  Lattice lat;
  std::vector<Eigen::Vector3d> points;
  std::vector<int> level_of;
  const double center_x = 0.5 * (geometry.min_x() + geometry.max_x());
  const double center_y = 0.5 * (geometry.min_y() + geometry.max_y());

  for (int k = 0; k < levels; ++k) {
    const double altitude = std::max(envelope.alt_max / std::pow(2.0, k), envelope.alt_min);
    // Once halving hits the altitude floor further levels would duplicate it.
    if (!lat.levels.empty() && altitude >= lat.levels.back().altitude_m) break;
    const double spacing = sensor.footprint_at({center_x, center_y, altitude}).side_m;
    lat.levels.push_back({altitude, spacing});
    const int level_index = static_cast<int>(lat.levels.size()) - 1;

    const int n_x = std::max(1, static_cast<int>(std::ceil(geometry.width_m() / spacing)));
    const int n_y = std::max(1, static_cast<int>(std::ceil(geometry.height_m() / spacing)));
    for (int iy = 0; iy < n_y; ++iy) {
      for (int ix = 0; ix < n_x; ++ix) {
        const double x = center_x + (ix - 0.5 * (n_x - 1)) * spacing;
        const double y = center_y + (iy - 0.5 * (n_y - 1)) * spacing;
        points.emplace_back(x, y, altitude);
        level_of.push_back(level_index);
      }
    }
  }

  // Selection iterates points in order, replacing only on strict rate
  // improvement, so storage order doubles as the tie-break order:
  // lower altitude first, then lexicographic (x, y).
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Eigen::Vector3d& pa = points[static_cast<std::size_t>(a)];
    const Eigen::Vector3d& pb = points[static_cast<std::size_t>(b)];
    if (pa.z() != pb.z()) return pa.z() < pb.z();
    if (pa.x() != pb.x()) return pa.x() < pb.x();
    return pa.y() < pb.y();
  });
  lat.points.reserve(points.size());
  lat.level_of.reserve(points.size());
  for (int i : order) {
    lat.points.push_back(points[static_cast<std::size_t>(i)]);
    lat.level_of.push_back(level_of[static_cast<std::size_t>(i)]);
  }
  return lat;
}

void PlannerConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (!(budget_s > 0.0)) throw std::invalid_argument("budget must be positive");
  if (!(limits.v_max > 0.0) || !(limits.a_max > 0.0))
    throw std::invalid_argument("dynamic limits must be positive");
  thresholds.validate();
  envelope.validate();
  cmaes.validate();
}

Selection select_viewpoint(const OccupancyGrid& belief, const SensorModel& sensor,
                           const Lattice& lattice, ObjectiveKind objective,
                           const ClassificationThresholds& thr, const Eigen::Vector3d& from,
                           const DynamicLimits& limits, const std::vector<int>& visited) {
  const std::size_t n = lattice.points.size();
  if (n == 0) throw std::invalid_argument("lattice is empty");

  std::vector<int> candidates;
  candidates.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((lattice.points[i] - from).norm() > kCoincident) candidates.push_back(static_cast<int>(i));
  if (candidates.empty())  // single-point lattice at the current position
    for (std::size_t i = 0; i < n; ++i) candidates.push_back(static_cast<int>(i));

  int best = -1;
  double best_gain = 0.0;
  double best_rate = -std::numeric_limits<double>::infinity();
  for (int i : candidates) {
    const Eigen::Vector3d& p = lattice.points[static_cast<std::size_t>(i)];
    const double g = gain(belief, sensor, thr, p, objective);
    const double rate = g / allocate_time(from, p, limits);
    if (rate > best_rate) {
      best = i;
      best_rate = rate;
      best_gain = g;
    }
  }

  if (best >= 0 && best_gain > 0.0)
    return {{lattice.points[static_cast<std::size_t>(best)], ViewpointKind::global},
            best,
            best_gain,
            best_rate,
            false};

  // No candidate gains anything (fully classified map or uninformative
  // sensor): head for unexplored ground instead of stalling.
  const int lowest = static_cast<int>(lattice.levels.size()) - 1;
  const auto nearest = [&](bool respect_visited) {
    int pick = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i : candidates) {
      if (lattice.level_of[static_cast<std::size_t>(i)] != lowest) continue;
      if (respect_visited &&
          std::find(visited.begin(), visited.end(), i) != visited.end())
        continue;
      const double d = (lattice.points[static_cast<std::size_t>(i)] - from).norm();
      if (d < best_d) {
        pick = i;
        best_d = d;
      }
    }
    return pick;
  };
  int pick = nearest(true);
  if (pick < 0) pick = nearest(false);
  if (pick < 0) pick = candidates.front();
  const Eigen::Vector3d& p = lattice.points[static_cast<std::size_t>(pick)];
  const double g = gain(belief, sensor, thr, p, objective);
  return {{p, ViewpointKind::global}, pick, g, g / allocate_time(from, p, limits), true};
}

Viewpoint insert_intermediate(const Viewpoint& prev, const Viewpoint& next,
                              const FlightEnvelope& envelope) {
  return {envelope.clamp(0.5 * (prev.position + next.position)), ViewpointKind::intermediate};
}

Plan replan(PlanState& state, const OccupancyGrid& belief, const SensorModel& sensor,
            const Lattice& lattice, const PlannerConfig& config, Rng& rng,
            MissionObserver* observer, int replan_index) {
  if (!(state.elapsed_s < config.budget_s))
    throw std::invalid_argument("replan called with exhausted budget");

  OccupancyGrid planning = belief;
  std::vector<Viewpoint> globals;
  std::vector<Viewpoint> inters;
  std::vector<ObjectiveKind> global_obj;
  std::vector<ObjectiveKind> inter_obj;
  double virtual_s = 0.0;
  int step = 0;

  while (static_cast<int>(globals.size() + inters.size()) < config.horizon) {
    const ObjectiveKind kind = choose_objective(config.objective_mode,
                                                state.elapsed_s + virtual_s,
                                                config.budget_s, rng);
    const Eigen::Vector3d from = globals.empty() ? state.position : globals.back().position;
    const Selection sel = select_viewpoint(planning, sensor, lattice, kind, config.thresholds,
                                           from, config.limits, state.visited);
    if (observer) {
      SelectionEvent ev;
      ev.replan_index = replan_index;
      ev.step = step;
      ev.objective = kind;
      ev.from = from;
      ev.chosen = sel.viewpoint;
      ev.lattice_index = sel.lattice_index;
      ev.gain = sel.gain;
      ev.rate = sel.rate;
      ev.fallback = sel.fallback;
      ev.belief = &planning;
      ev.visited = &state.visited;
      observer->on_selection(ev);
    }
    if (sel.lattice_index >= 0 &&
        std::find(state.visited.begin(), state.visited.end(), sel.lattice_index) ==
            state.visited.end())
      state.visited.push_back(sel.lattice_index);

    apply_simulated_observation(planning, sensor, config.thresholds, sel.viewpoint.position,
                                kind);
    virtual_s += allocate_time(from, sel.viewpoint.position, config.limits);

    if (!globals.empty() &&
        static_cast<int>(globals.size() + inters.size()) + 1 < config.horizon) {
      inters.push_back(insert_intermediate(globals.back(), sel.viewpoint, config.envelope));
      inter_obj.push_back(kind);
    }
    globals.push_back(sel.viewpoint);
    global_obj.push_back(kind);
    ++step;
  }

  Plan plan;
  plan.viewpoints.reserve(globals.size() + inters.size());
  plan.objectives.reserve(globals.size() + inters.size());
  for (std::size_t k = 0; k < globals.size(); ++k) {
    plan.viewpoints.push_back(globals[k]);
    plan.objectives.push_back(global_obj[k]);
    if (k < inters.size()) {
      plan.viewpoints.push_back(inters[k]);
      plan.objectives.push_back(inter_obj[k]);
    }
  }

  if (config.optimizer_mode != RefineMode::none) {
    CmaesTrace trace = nullptr;
    if (observer) {
      trace = [observer, replan_index](int gen, const Eigen::VectorXd&, double f_best,
                                       double sigma) {
        observer->on_generation({replan_index, gen, f_best, sigma});
      };
    }
    const RefineOutcome out =
        refine_path(plan.viewpoints, plan.objectives, config.optimizer_mode, belief, sensor,
                    config.thresholds, state.position, config.budget_s - state.elapsed_s,
                    config.limits, config.envelope, config.cmaes, rng, trace);
    if (observer) {
      RefineEvent ev;
      ev.replan_index = replan_index;
      ev.mode = static_cast<int>(config.optimizer_mode);
      ev.dimension = out.dimension;
      ev.f_initial = out.f_initial;
      ev.f_best = out.f_best;
      ev.eval_count = out.eval_count;
      ev.generations = out.generations;
      observer->on_refine(ev);
    }
    plan.viewpoints = out.viewpoints;
  }

  if (observer)
    observer->on_replan({replan_index, state.elapsed_s, &plan.viewpoints, &plan.objectives});
  return plan;
}

}  // namespace ippsim
