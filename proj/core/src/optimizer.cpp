#include "ippsim/optimizer.hpp"

#include <limits>
#include <stdexcept>

namespace ippsim {
namespace {

// Legs shorter than this get infinite fitness: they would contribute no
// gain, and near-zero durations push the trajectory solve toward numerical
// breakdown.
constexpr double kMinLegM = 0.5;

double sequence_fitness(const std::vector<Eigen::Vector3d>& positions,
                        const std::vector<ObjectiveKind>& objectives,
                        const OccupancyGrid& belief, const SensorModel& sensor,
                        const ClassificationThresholds& thr, const Eigen::Vector3d& from,
                        double budget_remaining_s, const DynamicLimits& limits,
                        double envelope_violation_m) {
  double travel_s = 0.0;
  Eigen::Vector3d prev = from;
  for (const Eigen::Vector3d& p : positions) {
    if ((p - prev).norm() < kMinLegM) return std::numeric_limits<double>::infinity();
    travel_s += allocate_time(prev, p, limits);
    prev = p;
  }

  OccupancyGrid scratch = belief;
  double total_gain = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i)
    total_gain += apply_simulated_observation(scratch, sensor, thr, positions[i], objectives[i]);

  return -(total_gain / travel_s) +
         kBudgetPenaltyWeight * std::max(0.0, travel_s - budget_remaining_s) +
         kEnvelopePenaltyWeight * envelope_violation_m;
}

}  // namespace

RefineOutcome refine_path(const std::vector<Viewpoint>& viewpoints,
                          const std::vector<ObjectiveKind>& objectives, RefineMode mode,
                          const OccupancyGrid& belief, const SensorModel& sensor,
                          const ClassificationThresholds& thr, const Eigen::Vector3d& from,
                          double budget_remaining_s, const DynamicLimits& limits,
                          const FlightEnvelope& envelope, const CmaesConfig& config, Rng& rng,
                          const CmaesTrace& trace) {
  if (viewpoints.size() != objectives.size())
    throw std::invalid_argument("one objective per viewpoint required");
  if (mode == RefineMode::none) throw std::invalid_argument("refine called with mode none");

  std::vector<int> optimizable;
  for (std::size_t i = 0; i < viewpoints.size(); ++i)
    if (mode == RefineMode::global || viewpoints[i].kind == ViewpointKind::intermediate)
      optimizable.push_back(static_cast<int>(i));

  std::vector<Eigen::Vector3d> base;
  base.reserve(viewpoints.size());
  for (const Viewpoint& vp : viewpoints) base.push_back(vp.position);

  RefineOutcome out;
  out.viewpoints = viewpoints;
  out.dimension = 3 * static_cast<int>(optimizable.size());
  if (optimizable.empty()) {
    out.f_initial = sequence_fitness(base, objectives, belief, sensor, thr, from,
                                     budget_remaining_s, limits, 0.0);
    out.f_best = out.f_initial;
    return out;
  }

  // Out-of-envelope coordinates are clamped before simulation (the fitness
  // must be total) and charged a penalty proportional to the excursion.
  const auto decode = [&](const Eigen::VectorXd& x, std::vector<Eigen::Vector3d>& positions) {
    positions = base;
    double violation = 0.0;
    for (std::size_t k = 0; k < optimizable.size(); ++k) {
      const Eigen::Vector3d raw = x.segment<3>(3 * static_cast<Eigen::Index>(k));
      violation += envelope.violation(raw);
      positions[static_cast<std::size_t>(optimizable[k])] = envelope.clamp(raw);
    }
    return violation;
  };

  const auto fitness = [&](const Eigen::VectorXd& x) {
    std::vector<Eigen::Vector3d> positions;
    const double violation = decode(x, positions);
    return sequence_fitness(positions, objectives, belief, sensor, thr, from,
                            budget_remaining_s, limits, violation);
  };

  Eigen::VectorXd x0(out.dimension);
  for (std::size_t k = 0; k < optimizable.size(); ++k)
    x0.segment<3>(3 * static_cast<Eigen::Index>(k)) =
        base[static_cast<std::size_t>(optimizable[k])];

  const CmaesResult res = cmaes_minimize(fitness, x0, config, rng, trace);

  std::vector<Eigen::Vector3d> refined;
  decode(res.x_best, refined);
  for (std::size_t i = 0; i < refined.size(); ++i) out.viewpoints[i].position = refined[i];
  out.f_initial = fitness(x0);
  out.f_best = res.f_best;
  out.eval_count = res.eval_count;
  out.generations = res.generations;
  return out;
}

}  // namespace ippsim
