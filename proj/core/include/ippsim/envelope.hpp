#pragma once

#include <Eigen/Core>

#include "ippsim/grid.hpp"

namespace ippsim {

// Axis-aligned box the UAV may occupy: the map extent horizontally and an
// altitude band vertically.
struct FlightEnvelope {
  double min_x = 0.0;
  double max_x = 0.0;
  double min_y = 0.0;
  double max_y = 0.0;
  double alt_min = 2.0;
  double alt_max = 45.0;

  static FlightEnvelope for_geometry(const GridGeometry& geometry, double alt_min,
                                     double alt_max);

  void validate() const;
  bool contains(const Eigen::Vector3d& p, double tol = 0.0) const;
  Eigen::Vector3d clamp(const Eigen::Vector3d& p) const;

  // Total out-of-box distance summed per axis, in meters; 0 inside.
  double violation(const Eigen::Vector3d& p) const;
};

}  // namespace ippsim
