#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ippsim/envelope.hpp"
#include "ippsim/grid.hpp"
#include "ippsim/sensor.hpp"
#include "ippsim/trajectory.hpp"

namespace ippsim {

enum class SweepDirection { along_x, along_y };

struct CoverageConfig {
  double altitude_m = 8.66;
  double overlap_frac = 0.0;  // fraction of the swath shared by neighboring passes
  SweepDirection direction = SweepDirection::along_x;

  void validate(const FlightEnvelope& envelope) const;
};

// Boustrophedon sweep at fixed altitude: passes inset half a swath from the
// map edges and spaced at most swath*(1-overlap) apart (re-spaced evenly),
// measurement viewpoints along each pass on the same spacing rule, so the
// footprint union covers every cell center. When `start` is given, the
// orientation (pass order and first sweep direction) whose first viewpoint
// is nearest the start is chosen.
std::vector<Viewpoint> plan_coverage(const GridGeometry& geometry, const SensorModel& sensor,
                                     const CoverageConfig& cfg,
                                     const std::optional<Eigen::Vector3d>& start = std::nullopt);

}  // namespace ippsim
