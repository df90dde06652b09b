#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

namespace ippsim {

enum class ViewpointKind { global, intermediate };

struct Viewpoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  ViewpointKind kind = ViewpointKind::global;
};

struct DynamicLimits {
  double v_max = 5.0;   // m/s
  double a_max = 3.0;   // m/s^2
};

// Boundary state at the first waypoint; the path ends at rest.
struct StartState {
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
};

class TrajectoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateSegmentError : public TrajectoryError {
 public:
  using TrajectoryError::TrajectoryError;
};

class IllConditionedError : public TrajectoryError {
 public:
  using TrajectoryError::TrajectoryError;
};

// One degree-12 segment per axis, coefficients in normalized time t/duration.
struct PolynomialSegment {
  Eigen::Matrix<double, 3, 13> coeffs = Eigen::Matrix<double, 3, 13>::Zero();
  double duration_s = 0.0;

  // Derivative of the given order at local time t in [0, duration_s].
  Eigen::Vector3d evaluate(double t, int order = 0) const;
};

// Physical end-point derivatives of orders 0..4 (columns) per axis (rows).
using EndpointDerivatives = Eigen::Matrix<double, 3, 5>;

// The snap-minimizing segment with all ten end-point derivative vectors
// pinned; the three residual coefficient degrees of freedom are resolved by
// the quadratic program.
PolynomialSegment min_snap_segment(const EndpointDerivatives& at_start,
                                   const EndpointDerivatives& at_end, double duration_s);

// Integrated squared snap, summed over axes.
double snap_cost(const PolynomialSegment& segment);

struct TimedState {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
};

class PolynomialPath {
 public:
  PolynomialPath() = default;
  PolynomialPath(std::vector<PolynomialSegment> segments, std::vector<Viewpoint> waypoints);

  const std::vector<PolynomialSegment>& segments() const { return segments_; }
  const std::vector<Viewpoint>& waypoints() const { return waypoints_; }
  bool empty() const { return segments_.empty(); }
  double total_time() const;

  // Time at which the path reaches waypoint `i`.
  double arrival_time(std::size_t i) const;

  Eigen::Vector3d evaluate(double t, int order = 0) const;
  Eigen::Vector3d position(double t) const { return evaluate(t, 0); }
  Eigen::Vector3d velocity(double t) const { return evaluate(t, 1); }
  Eigen::Vector3d acceleration(double t) const { return evaluate(t, 2); }

  // Splices another path onto the end of this one.
  void append(const PolynomialPath& other);

 private:
  std::vector<PolynomialSegment> segments_;
  std::vector<Viewpoint> waypoints_;
  std::vector<double> cumulative_;  // arrival time per waypoint, cumulative_[0] = 0
};

double travel_time(const PolynomialPath& path);

double snap_cost(const PolynomialPath& path);

// States at t = 0, dt, ..., with the final time included exactly.
std::vector<TimedState> sample(const PolynomialPath& path, double dt);

// Trapezoidal-profile nominal duration for a straight leg of length d:
// d/v_max + v_max/a_max in the cruise regime, 2*sqrt(d/a_max) otherwise.
double allocate_time(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                     const DynamicLimits& limits);

// Snap-minimizing path through the waypoints: positions interpolated exactly,
// start velocity/acceleration taken from start_state, rest at the final
// waypoint, all remaining derivatives free. Segment durations come from
// allocate_time and are scaled up by 1.1 (at most 20 times) until the path
// sampled at 100 Hz respects the dynamic limits.
PolynomialPath plan_segments(const std::vector<Viewpoint>& waypoints,
                             const DynamicLimits& limits,
                             const StartState& start_state = StartState{});

}  // namespace ippsim
