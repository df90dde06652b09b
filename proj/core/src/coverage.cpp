#include "ippsim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ippsim {
namespace {

// Evenly re-spaced stations over [lo, hi] with spacing at most `step`;
// collapses to the midpoint when the interval is empty.
std::vector<double> stations(double lo, double hi, double step) {
  if (hi <= lo) return {0.5 * (lo + hi)};
  const int n = static_cast<int>(std::ceil((hi - lo) / step)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  const double actual = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo + i * actual);
  return out;
}

std::vector<Viewpoint> assemble(const std::vector<double>& passes,
                                const std::vector<double>& along, double altitude,
                                SweepDirection direction, bool reverse_passes,
                                bool first_backward) {
  std::vector<Viewpoint> out;
  out.reserve(passes.size() * along.size());
  for (std::size_t pi = 0; pi < passes.size(); ++pi) {
    const double pass =
        reverse_passes ? passes[passes.size() - 1 - pi] : passes[pi];
    const bool backward = (pi % 2 == 0) == first_backward;
    for (std::size_t ai = 0; ai < along.size(); ++ai) {
      const double a = backward ? along[along.size() - 1 - ai] : along[ai];
      const double x = direction == SweepDirection::along_x ? a : pass;
      const double y = direction == SweepDirection::along_x ? pass : a;
      out.push_back({{x, y, altitude}, ViewpointKind::global});
    }
  }
  return out;
}

}  // namespace

void CoverageConfig::validate(const FlightEnvelope& envelope) const {
  if (!(altitude_m >= envelope.alt_min) || !(altitude_m <= envelope.alt_max))
    throw std::invalid_argument("coverage altitude outside flight envelope");
  if (!(overlap_frac >= 0.0) || !(overlap_frac < 1.0))
    throw std::invalid_argument("overlap fraction must lie in [0, 1)");
}

std::vector<Viewpoint> plan_coverage(const GridGeometry& geometry, const SensorModel& sensor,
                                     const CoverageConfig& cfg,
                                     const std::optional<Eigen::Vector3d>& start) {
  const double swath =
      sensor.footprint_at({geometry.min_x(), geometry.min_y(), cfg.altitude_m}).side_m;
  if (!(swath > 0.0)) throw std::invalid_argument("zero swath at coverage altitude");
  const double step = swath * (1.0 - cfg.overlap_frac);

  const bool x_along = cfg.direction == SweepDirection::along_x;
  const double along_lo = (x_along ? geometry.min_x() : geometry.min_y()) + 0.5 * swath;
  const double along_hi = (x_along ? geometry.max_x() : geometry.max_y()) - 0.5 * swath;
  const double pass_lo = (x_along ? geometry.min_y() : geometry.min_x()) + 0.5 * swath;
  const double pass_hi = (x_along ? geometry.max_y() : geometry.max_x()) - 0.5 * swath;

  const std::vector<double> passes = stations(pass_lo, pass_hi, step);
  const std::vector<double> along = stations(along_lo, along_hi, step);

  if (!start) return assemble(passes, along, cfg.altitude_m, cfg.direction, false, false);

  std::vector<Viewpoint> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const bool reverse_passes : {false, true}) {
    for (const bool first_backward : {false, true}) {
      std::vector<Viewpoint> candidate = assemble(passes, along, cfg.altitude_m,
                                                  cfg.direction, reverse_passes,
                                                  first_backward);
      const double d = (candidate.front().position - *start).norm();
      if (d < best_d) {
        best_d = d;
        best = std::move(candidate);
      }
    }
  }
  return best;
}

}  // namespace ippsim
