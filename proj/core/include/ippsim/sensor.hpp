#pragma once

#include <Eigen/Core>
#include <vector>

#include "ippsim/grid.hpp"
#include "ippsim/rng.hpp"

namespace ippsim {

// One classifier reading for a single cell.
struct CellObservation {
  CellIndex cell;
  double p_obs = 0.5;
};

// Square ground footprint of the nadir camera.
struct Footprint {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double side_m = 0.0;
};

// Down-looking camera whose per-cell classification accuracy decays with
// altitude: a plateau at accuracy_ceiling below h_min, linear down to
// accuracy_floor at h_max, flat beyond.
class SensorModel {
 public:
  SensorModel(double half_angle_rad, double accuracy_ceiling, double accuracy_floor,
              double h_min_m, double h_max_m);

  static SensorModel defaults();

  double half_angle_rad() const { return half_angle_rad_; }
  double accuracy_ceiling() const { return accuracy_ceiling_; }
  double accuracy_floor() const { return accuracy_floor_; }
  double h_min_m() const { return h_min_m_; }
  double h_max_m() const { return h_max_m_; }

  // Classification accuracy at the given altitude. Throws
  // std::invalid_argument for altitude <= 0.
  double accuracy_at(double altitude_m) const;

  // Footprint of a camera at `position` (z is altitude above the field).
  Footprint footprint_at(const Eigen::Vector3d& position) const;

 private:
  double half_angle_rad_;
  double accuracy_ceiling_;
  double accuracy_floor_;
  double h_min_m_;
  double h_max_m_;
};

// Cells whose centers lie inside the footprint, closed on the low edge and
// open on the high edge; cells outside the grid are dropped.
std::vector<CellIndex> cells_in_footprint(const GridGeometry& geometry,
                                          const Footprint& footprint);

// Noisy observation of the latent field: each footprint cell's label is
// correct with probability a = accuracy_at(altitude), and the emitted
// confidence is a for a weed label, 1-a otherwise.
std::vector<CellObservation> observe(const SensorModel& model, const GroundTruthMap& truth,
                                     const Eigen::Vector3d& position, Rng& rng);

// Deterministic forward simulation used for planning: each footprint cell is
// assigned its maximum-likelihood label under the current belief (weed iff
// p >= 0.5) and reported with the altitude's accuracy.
std::vector<CellObservation> simulate_ml_observation(const SensorModel& model,
                                                     const OccupancyGrid& belief,
                                                     const Eigen::Vector3d& position);

}  // namespace ippsim
