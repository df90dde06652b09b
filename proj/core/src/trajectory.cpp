#include "ippsim/trajectory.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace ippsim {
namespace {

constexpr int kCoeffs = 13;   // polynomial degree 12
constexpr int kOrders = 5;    // end-point derivative orders 0..4
constexpr int kEnds = 2 * kOrders;
constexpr double kSampleHz = 100.0;
constexpr double kScaleFactor = 1.1;
constexpr int kMaxScaleIters = 20;
constexpr double kMinLegLength = 1e-9;

double perm(int k, int r) {
  double v = 1.0;
  for (int i = 0; i < r; ++i) v *= static_cast<double>(k - i);
  return v;
}

// Everything here is in normalized time tau = t / duration, so the matrices
// are constant and computed once. A physical derivative of order r maps to a
// normalized one by the factor duration^r, and the integrated squared snap
// picks up a factor duration^-7.
struct SegmentBasis {
  Eigen::Matrix<double, kCoeffs, kCoeffs> snap_gram;  // c' G c = integral of squared 4th derivative
  Eigen::Matrix<double, kCoeffs, kEnds> coeff_map;    // end-point derivatives -> coefficients
  Eigen::Matrix<double, kEnds, kEnds> cost;           // coeff_map' * snap_gram * coeff_map
};

SegmentBasis build_segment_basis() {
  SegmentBasis b;

  b.snap_gram.setZero();
  for (int j = 4; j < kCoeffs; ++j)
    for (int k = 4; k < kCoeffs; ++k)
      b.snap_gram(j, k) = perm(j, 4) * perm(k, 4) / static_cast<double>(j + k - 7);

  // Rows: orders 0..4 at tau=0, then orders 0..4 at tau=1.
  Eigen::Matrix<double, kEnds, kCoeffs> ends = Eigen::Matrix<double, kEnds, kCoeffs>::Zero();
  for (int r = 0; r < kOrders; ++r) {
    ends(r, r) = perm(r, r);
    for (int k = r; k < kCoeffs; ++k) ends(kOrders + r, k) = perm(k, r);
  }

  // KKT system of the equality-constrained snap minimum over the three
  // coefficient degrees of freedom the end-point derivatives leave open.
  constexpr int n = kCoeffs + kEnds;
  Eigen::Matrix<double, n, n> kkt = Eigen::Matrix<double, n, n>::Zero();
  kkt.topLeftCorner(kCoeffs, kCoeffs) = 2.0 * b.snap_gram;
  kkt.topRightCorner(kCoeffs, kEnds) = ends.transpose();
  kkt.bottomLeftCorner(kEnds, kCoeffs) = ends;

  Eigen::Matrix<double, n, kEnds> rhs = Eigen::Matrix<double, n, kEnds>::Zero();
  rhs.bottomRows(kEnds).setIdentity();

  Eigen::FullPivLU<Eigen::Matrix<double, n, n>> lu(kkt);
  b.coeff_map = lu.solve(rhs).topRows(kCoeffs);
  b.cost = b.coeff_map.transpose() * b.snap_gram * b.coeff_map;
  b.cost = 0.5 * (b.cost + b.cost.transpose()).eval();
  return b;
}

const SegmentBasis& segment_basis() {
  static const SegmentBasis basis = build_segment_basis();
  return basis;
}

Eigen::Matrix<double, kEnds, 1> time_powers(double duration) {
  Eigen::Matrix<double, kEnds, 1> s;
  double p = 1.0;
  for (int r = 0; r < kOrders; ++r) {
    s(r) = p;
    s(kOrders + r) = p;
    p *= duration;
  }
  return s;
}

}  // namespace

Eigen::Vector3d PolynomialSegment::evaluate(double t, int order) const {
  if (duration_s <= 0.0) throw TrajectoryError("segment has non-positive duration");
  const double tau = std::clamp(t / duration_s, 0.0, 1.0);
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  double tau_pow = 1.0;
  for (int k = order; k < kCoeffs; ++k) {
    out += coeffs.col(k) * (perm(k, order) * tau_pow);
    tau_pow *= tau;
  }
  // Normalized-time derivative back to physical units.
  return out / std::pow(duration_s, order);
}

PolynomialSegment min_snap_segment(const EndpointDerivatives& at_start,
                                   const EndpointDerivatives& at_end, double duration_s) {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s))
    throw TrajectoryError("segment duration must be positive");
  const SegmentBasis& basis = segment_basis();
  const Eigen::Matrix<double, kEnds, 1> scale = time_powers(duration_s);

  PolynomialSegment seg;
  seg.duration_s = duration_s;
  for (int axis = 0; axis < 3; ++axis) {
    Eigen::Matrix<double, kEnds, 1> d;
    d.head<kOrders>() = at_start.row(axis).transpose();
    d.tail<kOrders>() = at_end.row(axis).transpose();
    seg.coeffs.row(axis) = (basis.coeff_map * d.cwiseProduct(scale)).transpose();
  }
  return seg;
}

double snap_cost(const PolynomialSegment& segment) {
  const SegmentBasis& basis = segment_basis();
  double cost = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    Eigen::Matrix<double, kCoeffs, 1> c = segment.coeffs.row(axis).transpose();
    cost += c.dot(basis.snap_gram * c);
  }
  return cost / std::pow(segment.duration_s, 7);
}

PolynomialPath::PolynomialPath(std::vector<PolynomialSegment> segments,
                               std::vector<Viewpoint> waypoints)
    : segments_(std::move(segments)), waypoints_(std::move(waypoints)) {
  if (waypoints_.size() != segments_.size() + 1)
    throw TrajectoryError("path needs one more waypoint than segments");
  cumulative_.resize(waypoints_.size());
  cumulative_[0] = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i)
    cumulative_[i + 1] = cumulative_[i] + segments_[i].duration_s;
}

double PolynomialPath::total_time() const {
  return cumulative_.empty() ? 0.0 : cumulative_.back();
}

double PolynomialPath::arrival_time(std::size_t i) const {
  if (i >= cumulative_.size()) throw std::out_of_range("waypoint index out of range");
  return cumulative_[i];
}

Eigen::Vector3d PolynomialPath::evaluate(double t, int order) const {
  if (segments_.empty()) throw TrajectoryError("empty path");
  // upper_bound on arrival times puts boundary instants into the earlier
  // segment's closed end, and clamps t outside [0, total] to the end segments.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
  std::size_t idx = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  idx = idx == 0 ? 0 : idx - 1;
  idx = std::min(idx, segments_.size() - 1);
  return segments_[idx].evaluate(t - cumulative_[idx], order);
}

void PolynomialPath::append(const PolynomialPath& other) {
  if (other.empty()) return;
  if (empty()) {
    *this = other;
    return;
  }
  if ((waypoints_.back().position - other.waypoints_.front().position).norm() > kMinLegLength)
    throw TrajectoryError("appended path must start where this one ends");
  segments_.insert(segments_.end(), other.segments_.begin(), other.segments_.end());
  waypoints_.insert(waypoints_.end(), other.waypoints_.begin() + 1, other.waypoints_.end());
  const double offset = cumulative_.back();
  for (std::size_t i = 1; i < other.cumulative_.size(); ++i)
    cumulative_.push_back(offset + other.cumulative_[i]);
}

double travel_time(const PolynomialPath& path) { return path.total_time(); }

double snap_cost(const PolynomialPath& path) {
  double cost = 0.0;
  for (const PolynomialSegment& seg : path.segments()) cost += snap_cost(seg);
  return cost;
}

std::vector<TimedState> sample(const PolynomialPath& path, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample step must be positive");
  const double total = path.total_time();
  std::vector<TimedState> out;
  out.reserve(static_cast<std::size_t>(total / dt) + 2);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= total - 1e-12) break;
    out.push_back({t, path.position(t), path.velocity(t), path.acceleration(t)});
  }
  out.push_back({total, path.position(total), path.velocity(total), path.acceleration(total)});
  return out;
}

double allocate_time(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                     const DynamicLimits& limits) {
  const double d = (p1 - p0).norm();
  const double cruise_distance = limits.v_max * limits.v_max / limits.a_max;
  if (d >= cruise_distance) return d / limits.v_max + limits.v_max / limits.a_max;
  return 2.0 * std::sqrt(d / limits.a_max);
}

namespace {

// Stacked per-waypoint derivative layout used by the global solve: five
// entries per waypoint, orders 0..4.
int stack_index(int waypoint, int order) { return kOrders * waypoint + order; }

PolynomialPath solve_with_durations(const std::vector<Viewpoint>& waypoints,
                                    const std::vector<double>& durations,
                                    const StartState& start_state) {
  const SegmentBasis& basis = segment_basis();
  const int n_way = static_cast<int>(waypoints.size());
  const int n_seg = n_way - 1;
  const int n_stack = kOrders * n_way;

  Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(n_stack, n_stack);
  for (int s = 0; s < n_seg; ++s) {
    const Eigen::Matrix<double, kEnds, 1> scale = time_powers(durations[s]);
    const double inv_t7 = 1.0 / std::pow(durations[s], 7);
    for (int i = 0; i < kEnds; ++i) {
      const int gi = stack_index(s + (i < kOrders ? 0 : 1), i % kOrders);
      for (int j = 0; j < kEnds; ++j) {
        const int gj = stack_index(s + (j < kOrders ? 0 : 1), j % kOrders);
        hessian(gi, gj) += basis.cost(i, j) * scale(i) * scale(j) * inv_t7;
      }
    }
  }

  // Pinned: positions everywhere, velocity and acceleration at both path ends.
  std::vector<bool> fixed(static_cast<std::size_t>(n_stack), false);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n_stack, 3);
  for (int w = 0; w < n_way; ++w) {
    fixed[static_cast<std::size_t>(stack_index(w, 0))] = true;
    values.row(stack_index(w, 0)) = waypoints[static_cast<std::size_t>(w)].position.transpose();
  }
  fixed[static_cast<std::size_t>(stack_index(0, 1))] = true;
  fixed[static_cast<std::size_t>(stack_index(0, 2))] = true;
  values.row(stack_index(0, 1)) = start_state.velocity.transpose();
  values.row(stack_index(0, 2)) = start_state.acceleration.transpose();
  fixed[static_cast<std::size_t>(stack_index(n_way - 1, 1))] = true;
  fixed[static_cast<std::size_t>(stack_index(n_way - 1, 2))] = true;

  std::vector<int> free_idx, fixed_idx;
  for (int i = 0; i < n_stack; ++i) (fixed[static_cast<std::size_t>(i)] ? fixed_idx : free_idx).push_back(i);

  if (!free_idx.empty()) {
    const int nf = static_cast<int>(free_idx.size());
    const int nx = static_cast<int>(fixed_idx.size());
    Eigen::MatrixXd h_ff(nf, nf), h_fx(nf, nx);
    Eigen::MatrixXd d_fixed(nx, 3);
    for (int i = 0; i < nf; ++i) {
      for (int j = 0; j < nf; ++j) h_ff(i, j) = hessian(free_idx[static_cast<std::size_t>(i)], free_idx[static_cast<std::size_t>(j)]);
      for (int j = 0; j < nx; ++j) h_fx(i, j) = hessian(free_idx[static_cast<std::size_t>(i)], fixed_idx[static_cast<std::size_t>(j)]);
    }
    for (int j = 0; j < nx; ++j) d_fixed.row(j) = values.row(fixed_idx[static_cast<std::size_t>(j)]);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(h_ff);
    if (!lu.isInvertible())
      throw IllConditionedError("free-derivative system is singular");
    Eigen::MatrixXd d_free = lu.solve(-h_fx * d_fixed);
    if (!d_free.allFinite())
      throw IllConditionedError("free-derivative solve produced non-finite values");
    for (int i = 0; i < nf; ++i) values.row(free_idx[static_cast<std::size_t>(i)]) = d_free.row(i);
  }

  std::vector<PolynomialSegment> segments;
  segments.reserve(static_cast<std::size_t>(n_seg));
  for (int s = 0; s < n_seg; ++s) {
    EndpointDerivatives at_start, at_end;
    for (int r = 0; r < kOrders; ++r) {
      at_start.col(r) = values.row(stack_index(s, r)).transpose();
      at_end.col(r) = values.row(stack_index(s + 1, r)).transpose();
    }
    segments.push_back(min_snap_segment(at_start, at_end, durations[static_cast<std::size_t>(s)]));
  }
  return PolynomialPath(std::move(segments), waypoints);
}

bool within_limits(const PolynomialPath& path, const DynamicLimits& limits) {
  // Analytic end-point evaluation would miss interior extrema; a dense sweep
  // at kSampleHz is the acceptance rule for feasibility.
  const std::vector<TimedState> states = sample(path, 1.0 / kSampleHz);
  const double v_cap = limits.v_max * (1.0 + 1e-9);
  const double a_cap = limits.a_max * (1.0 + 1e-9);
  for (const TimedState& s : states)
    if (s.velocity.norm() > v_cap || s.acceleration.norm() > a_cap) return false;
  return true;
}

}  // namespace

PolynomialPath plan_segments(const std::vector<Viewpoint>& waypoints,
                             const DynamicLimits& limits, const StartState& start_state) {
  if (waypoints.size() < 2) throw TrajectoryError("need at least two waypoints");
  if (!(limits.v_max > 0.0) || !(limits.a_max > 0.0))
    throw std::invalid_argument("dynamic limits must be positive");

  std::vector<double> durations;
  durations.reserve(waypoints.size() - 1);
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const double d = (waypoints[i + 1].position - waypoints[i].position).norm();
    if (d <= kMinLegLength)
      throw DegenerateSegmentError("coincident waypoints at segment " + std::to_string(i));
    durations.push_back(allocate_time(waypoints[i].position, waypoints[i + 1].position, limits));
  }

  for (int iter = 0; iter < kMaxScaleIters; ++iter) {
    PolynomialPath path = solve_with_durations(waypoints, durations, start_state);
    if (within_limits(path, limits)) return path;
    for (double& t : durations) t *= kScaleFactor;
  }
  throw TrajectoryError("time scaling failed to satisfy dynamic limits");
}

}  // namespace ippsim
