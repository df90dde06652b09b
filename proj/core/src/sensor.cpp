#include "ippsim/sensor.hpp"

#include <cmath>
#include <stdexcept>

namespace ippsim {

SensorModel::SensorModel(double half_angle_rad, double accuracy_ceiling,
                         double accuracy_floor, double h_min_m, double h_max_m)
    : half_angle_rad_(half_angle_rad),
      accuracy_ceiling_(accuracy_ceiling),
      accuracy_floor_(accuracy_floor),
      h_min_m_(h_min_m),
      h_max_m_(h_max_m) {
  if (!(half_angle_rad > 0.0 && half_angle_rad < 1.5707963267948966)) {
    throw std::invalid_argument("sensor half angle must lie in (0, pi/2)");
  }
  // Ceiling 1 would emit certainty observations, which log-odds fusion
  // cannot represent.
  if (!(accuracy_floor >= 0.5 && accuracy_floor < accuracy_ceiling && accuracy_ceiling < 1.0)) {
    throw std::invalid_argument("sensor accuracies must satisfy 0.5 <= floor < ceiling < 1");
  }
  if (!(h_min_m > 0.0 && h_min_m < h_max_m)) {
    throw std::invalid_argument("sensor altitudes must satisfy 0 < h_min < h_max");
  }
}

SensorModel SensorModel::defaults() {
  return SensorModel(0.78539816339744830962, 0.95, 0.5, 2.0, 45.0);
}

double SensorModel::accuracy_at(double altitude_m) const {
  if (!(altitude_m > 0.0)) {
    throw std::invalid_argument("accuracy_at: altitude must be positive");
  }
  if (altitude_m <= h_min_m_) return accuracy_ceiling_;
  if (altitude_m >= h_max_m_) return accuracy_floor_;
  const double frac = (altitude_m - h_min_m_) / (h_max_m_ - h_min_m_);
  return accuracy_ceiling_ + frac * (accuracy_floor_ - accuracy_ceiling_);
}

Footprint SensorModel::footprint_at(const Eigen::Vector3d& position) const {
  if (!(position.z() > 0.0)) {
    throw std::invalid_argument("footprint_at: altitude must be positive");
  }
  return Footprint{position.head<2>(), 2.0 * position.z() * std::tan(half_angle_rad_)};
}

std::vector<CellIndex> cells_in_footprint(const GridGeometry& geometry,
                                          const Footprint& footprint) {
  const double half = 0.5 * footprint.side_m;
  const double res = geometry.resolution_m();
  // Cell centers sit at origin + (i + 0.5) * res; membership is closed on the
  // low edge, open on the high edge.
  const double lo_x = (footprint.center.x() - half - geometry.origin().x()) / res - 0.5;
  const double hi_x = (footprint.center.x() + half - geometry.origin().x()) / res - 0.5;
  const double lo_y = (footprint.center.y() - half - geometry.origin().y()) / res - 0.5;
  const double hi_y = (footprint.center.y() + half - geometry.origin().y()) / res - 0.5;

  const int x0 = std::max(0, static_cast<int>(std::ceil(lo_x)));
  const int x1 = std::min(geometry.cells_x() - 1,
                          static_cast<int>(std::ceil(hi_x)) - 1);
  const int y0 = std::max(0, static_cast<int>(std::ceil(lo_y)));
  const int y1 = std::min(geometry.cells_y() - 1,
                          static_cast<int>(std::ceil(hi_y)) - 1);

  std::vector<CellIndex> cells;
  if (x0 > x1 || y0 > y1) return cells;
  cells.reserve(static_cast<std::size_t>(x1 - x0 + 1) * static_cast<std::size_t>(y1 - y0 + 1));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      cells.push_back({x, y});
    }
  }
  return cells;
}

std::vector<CellObservation> observe(const SensorModel& model, const GroundTruthMap& truth,
                                     const Eigen::Vector3d& position, Rng& rng) {
  const double a = model.accuracy_at(position.z());
  const auto cells = cells_in_footprint(truth.geometry(), model.footprint_at(position));
  std::vector<CellObservation> observations;
  observations.reserve(cells.size());
  for (const CellIndex cell : cells) {
    const bool correct = rng.bernoulli(a);
    const bool label_weed = truth.occupied(cell) == correct;
    observations.push_back({cell, label_weed ? a : 1.0 - a});
  }
  return observations;
}

std::vector<CellObservation> simulate_ml_observation(const SensorModel& model,
                                                     const OccupancyGrid& belief,
                                                     const Eigen::Vector3d& position) {
  const double a = model.accuracy_at(position.z());
  const auto cells = cells_in_footprint(belief.geometry(), model.footprint_at(position));
  std::vector<CellObservation> observations;
  observations.reserve(cells.size());
  for (const CellIndex cell : cells) {
    // ML label with the tie at p = 0.5 broken toward weed.
    const bool label_weed = belief.log_odds(cell) >= 0.0;
    observations.push_back({cell, label_weed ? a : 1.0 - a});
  }
  return observations;
}

}  // namespace ippsim
