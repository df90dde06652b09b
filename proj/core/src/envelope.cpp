#include "ippsim/envelope.hpp"

#include <algorithm>
#include <stdexcept>

namespace ippsim {

FlightEnvelope FlightEnvelope::for_geometry(const GridGeometry& geometry, double alt_min,
                                            double alt_max) {
  FlightEnvelope env;
  env.min_x = geometry.min_x();
  env.max_x = geometry.max_x();
  env.min_y = geometry.min_y();
  env.max_y = geometry.max_y();
  env.alt_min = alt_min;
  env.alt_max = alt_max;
  env.validate();
  return env;
}

void FlightEnvelope::validate() const {
  if (!(min_x < max_x) || !(min_y < max_y))
    throw std::invalid_argument("envelope horizontal extent is empty");
  if (!(alt_min > 0.0) || !(alt_min < alt_max))
    throw std::invalid_argument("envelope needs 0 < alt_min < alt_max");
}

bool FlightEnvelope::contains(const Eigen::Vector3d& p, double tol) const {
  return p.x() >= min_x - tol && p.x() <= max_x + tol && p.y() >= min_y - tol &&
         p.y() <= max_y + tol && p.z() >= alt_min - tol && p.z() <= alt_max + tol;
}

Eigen::Vector3d FlightEnvelope::clamp(const Eigen::Vector3d& p) const {
  return {std::clamp(p.x(), min_x, max_x), std::clamp(p.y(), min_y, max_y),
          std::clamp(p.z(), alt_min, alt_max)};
}

double FlightEnvelope::violation(const Eigen::Vector3d& p) const {
  const auto axis = [](double v, double lo, double hi) {
    return std::max(0.0, lo - v) + std::max(0.0, v - hi);
  };
  return axis(p.x(), min_x, max_x) + axis(p.y(), min_y, max_y) + axis(p.z(), alt_min, alt_max);
}

}  // namespace ippsim
