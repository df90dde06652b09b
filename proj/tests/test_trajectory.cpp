#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "ippsim/rng.hpp"
#include "ippsim/trajectory.hpp"

using namespace ippsim;

namespace {

std::vector<Viewpoint> line_waypoints(const std::vector<double>& xs) {
  std::vector<Viewpoint> waypoints;
  for (double x : xs) waypoints.push_back({{x, 0.0, 10.0}, ViewpointKind::global});
  return waypoints;
}

double max_derivative_norm(const PolynomialPath& path, int order, double dt = 0.01) {
  double worst = 0.0;
  for (const TimedState& s : sample(path, dt)) {
    const Eigen::Vector3d d = order == 1 ? s.velocity : s.acceleration;
    worst = std::max(worst, d.norm());
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("trajectory");

TEST_CASE("time allocation follows the trapezoidal profile") {
  const DynamicLimits limits{2.0, 2.0};
  CHECK(allocate_time({0, 0, 0}, {10, 0, 0}, limits) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(allocate_time({0, 0, 0}, {0.25, 0, 0}, limits) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-12));
  // Strictly increasing in distance across the regime switch at d = v^2/a = 2.
  double prev = 0.0;
  for (double d = 0.1; d < 5.0; d += 0.1) {
    const double t = allocate_time({0, 0, 0}, {d, 0, 0}, limits);
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("single segment interpolates endpoints and respects limits") {
  const DynamicLimits limits{2.0, 2.0};
  const auto waypoints = line_waypoints({0.0, 10.0});
  const PolynomialPath path = plan_segments(waypoints, limits);

  REQUIRE(path.segments().size() == 1);
  CHECK((path.position(0.0) - waypoints[0].position).norm() < 1e-6);
  CHECK((path.position(path.total_time()) - waypoints[1].position).norm() < 1e-6);
  // Rest-to-rest boundary conditions.
  CHECK(path.velocity(0.0).norm() < 1e-9);
  CHECK(path.velocity(path.total_time()).norm() < 1e-9);
  CHECK(path.acceleration(path.total_time()).norm() < 1e-9);

  CHECK(max_derivative_norm(path, 1) <= limits.v_max * (1.0 + 1e-6));
  CHECK(max_derivative_norm(path, 2) <= limits.a_max * (1.0 + 1e-6));
  // The speed limit alone bounds the travel time from below.
  CHECK(path.total_time() >= 10.0 / limits.v_max);
}

TEST_CASE("multi-segment paths hit every waypoint") {
  const DynamicLimits limits{5.0, 3.0};
  std::vector<Viewpoint> waypoints = {
      {{0.0, 0.0, 10.0}, ViewpointKind::global},
      {{12.0, 3.0, 8.0}, ViewpointKind::intermediate},
      {{20.0, -5.0, 12.0}, ViewpointKind::global},
      {{4.0, 9.0, 15.0}, ViewpointKind::intermediate},
  };
  const PolynomialPath path = plan_segments(waypoints, limits);
  REQUIRE(path.segments().size() == 3);
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    CHECK((path.position(path.arrival_time(i)) - waypoints[i].position).norm() < 1e-6);
  }
  CHECK(max_derivative_norm(path, 1) <= limits.v_max * (1.0 + 1e-6));
  CHECK(max_derivative_norm(path, 2) <= limits.a_max * (1.0 + 1e-6));
}

TEST_CASE("joints are continuous through order four") {
  const DynamicLimits limits{5.0, 3.0};
  const auto waypoints = line_waypoints({0.0, 7.0, 18.0});
  const PolynomialPath path = plan_segments(waypoints, limits);
  REQUIRE(path.segments().size() == 2);

  const double t_joint = path.arrival_time(1);
  const double h = 0.01;  // 100 Hz finite-difference stencil
  for (int order = 0; order <= 4; ++order) {
    // 5-point central difference of the given order from sampled positions.
    auto fd = [&](double t0) {
      std::vector<Eigen::Vector3d> p;
      for (int k = -2; k <= 2; ++k) p.push_back(path.position(t0 + k * h));
      switch (order) {
        case 0: return p[2];
        case 1: return Eigen::Vector3d((p[3] - p[1]) / (2 * h));
        case 2: return Eigen::Vector3d((p[3] - 2 * p[2] + p[1]) / (h * h));
        case 3: return Eigen::Vector3d((p[4] - 2 * p[3] + 2 * p[1] - p[0]) / (2 * h * h * h));
        default:
          return Eigen::Vector3d((p[4] - 4 * p[3] + 6 * p[2] - 4 * p[1] + p[0]) /
                                 (h * h * h * h));
      }
    };

    // The one-sided analytic derivatives agree across the joint.
    const Eigen::Vector3d analytic_left = path.evaluate(t_joint - 1e-9, order);
    const Eigen::Vector3d analytic_right = path.evaluate(t_joint + 1e-9, order);
    const double scale = std::max(1.0, analytic_left.norm());
    CHECK((analytic_left - analytic_right).norm() / scale < 1e-4);

    // A stencil centered on the joint spans both segments; it can only agree
    // with the analytic value when the derivative is continuous there.
    const Eigen::Vector3d across = fd(t_joint);
    CHECK((across - analytic_left).norm() / scale < 1e-2);

    // Same-point agreement between finite differences and the evaluator on
    // either side of the joint.
    for (double t0 : {t_joint - 3 * h, t_joint + 3 * h}) {
      const Eigen::Vector3d estimate = fd(t0);
      const Eigen::Vector3d analytic = path.evaluate(t0, order);
      CHECK((estimate - analytic).norm() / std::max(1.0, analytic.norm()) < 1e-2);
    }
  }
}

TEST_CASE("travel time is additive over concatenation") {
  const DynamicLimits limits{5.0, 3.0};
  PolynomialPath a = plan_segments(line_waypoints({0.0, 10.0}), limits);
  const PolynomialPath b = plan_segments(line_waypoints({10.0, 25.0, 30.0}), limits);
  const double t_a = travel_time(a);
  const double t_b = travel_time(b);
  a.append(b);
  CHECK(travel_time(a) == t_a + t_b);  // exact: plain sum of durations
  CHECK(a.waypoints().size() == 4);    // the shared joint is stored once
}

TEST_CASE("empty path has zero travel time") {
  CHECK(travel_time(PolynomialPath{}) == 0.0);
}

TEST_CASE("sampling includes both endpoints exactly") {
  const DynamicLimits limits{5.0, 3.0};
  const PolynomialPath path = plan_segments(line_waypoints({0.0, 10.0}), limits);
  const auto coarse = sample(path, path.total_time());
  REQUIRE(coarse.size() == 2);
  CHECK(coarse.front().t == 0.0);
  CHECK(coarse.back().t == doctest::Approx(path.total_time()));
  CHECK((coarse.front().position - Eigen::Vector3d(0, 0, 10)).norm() < 1e-9);

  // Integrated speed bounds the straight-line distance from above.
  const auto fine = sample(path, 0.001);
  double arc = 0.0;
  for (std::size_t i = 1; i < fine.size(); ++i) {
    arc += (fine[i].position - fine[i - 1].position).norm();
  }
  CHECK(arc >= 10.0 - 1e-3);
}

TEST_CASE("degenerate and coincident waypoints are rejected") {
  const DynamicLimits limits{5.0, 3.0};
  CHECK_THROWS_AS(plan_segments(line_waypoints({4.0}), limits), TrajectoryError);
  CHECK_THROWS_AS(plan_segments(line_waypoints({4.0, 4.0}), limits),
                  DegenerateSegmentError);
  CHECK_THROWS_AS(plan_segments(line_waypoints({0.0, 10.0, 10.0}), limits),
                  DegenerateSegmentError);
}

TEST_CASE("start state boundary conditions are honored") {
  const DynamicLimits limits{5.0, 3.0};
  StartState start;
  start.velocity = Eigen::Vector3d(1.0, -0.5, 0.25);
  start.acceleration = Eigen::Vector3d(0.0, 0.5, 0.0);
  const PolynomialPath path = plan_segments(line_waypoints({0.0, 15.0}), limits, start);
  CHECK((path.velocity(0.0) - start.velocity).norm() < 1e-6);
  CHECK((path.acceleration(0.0) - start.acceleration).norm() < 1e-6);
  CHECK(path.velocity(path.total_time()).norm() < 1e-6);
}

TEST_CASE("snap solution is optimal against free-derivative perturbations") {
  // Rebuild the middle-joint derivatives of a two-segment path by hand and
  // verify that perturbing any free derivative never lowers the snap cost.
  const DynamicLimits limits{5.0, 3.0};
  const auto waypoints = line_waypoints({0.0, 7.0, 18.0});
  const PolynomialPath path = plan_segments(waypoints, limits);
  REQUIRE(path.segments().size() == 2);

  const double t_joint = path.arrival_time(1);
  const double t_end = path.total_time();

  auto endpoint = [&](double t) {
    EndpointDerivatives d;
    for (int order = 0; order < 5; ++order) d.col(order) = path.evaluate(t, order);
    return d;
  };
  const EndpointDerivatives at_start = endpoint(0.0);
  const EndpointDerivatives at_joint = endpoint(t_joint);
  const EndpointDerivatives at_end = endpoint(t_end);

  const double d0 = path.segments()[0].duration_s;
  const double d1 = path.segments()[1].duration_s;
  const double base_cost = snap_cost(min_snap_segment(at_start, at_joint, d0)) +
                           snap_cost(min_snap_segment(at_joint, at_end, d1));
  CHECK(base_cost == doctest::Approx(snap_cost(path)).epsilon(1e-6));

  // Free derivatives at the joint: orders 1..4 on each axis.
  for (int order = 1; order <= 4; ++order) {
    for (int axis = 0; axis < 3; ++axis) {
      for (double eps : {-1e-3, 1e-3}) {
        EndpointDerivatives perturbed = at_joint;
        perturbed(axis, order) += eps;
        const double cost = snap_cost(min_snap_segment(at_start, perturbed, d0)) +
                            snap_cost(min_snap_segment(perturbed, at_end, d1));
        CHECK(cost >= base_cost - 1e-9 * std::max(1.0, base_cost));
      }
    }
  }
}

TEST_CASE("uniform time dilation scales the derivative envelope") {
  // Rest-to-rest single segment: stretching the duration by k scales
  // max |v| by 1/k and max |a| by 1/k^2.
  EndpointDerivatives at_start = EndpointDerivatives::Zero();
  EndpointDerivatives at_end = EndpointDerivatives::Zero();
  at_end.col(0) = Eigen::Vector3d(10.0, 0.0, 0.0);

  auto max_order_norm = [](const PolynomialSegment& segment, int order) {
    double worst = 0.0;
    for (double t = 0.0; t <= segment.duration_s; t += segment.duration_s / 2000.0) {
      worst = std::max(worst, segment.evaluate(t, order).norm());
    }
    return worst;
  };

  const PolynomialSegment base = min_snap_segment(at_start, at_end, 4.0);
  const PolynomialSegment slow = min_snap_segment(at_start, at_end, 8.0);
  CHECK(max_order_norm(slow, 1) ==
        doctest::Approx(max_order_norm(base, 1) / 2.0).epsilon(1e-6));
  CHECK(max_order_norm(slow, 2) ==
        doctest::Approx(max_order_norm(base, 2) / 4.0).epsilon(1e-6));
}

TEST_CASE("random waypoint clouds stay feasible") {
  Rng rng(21);
  const DynamicLimits limits{5.0, 3.0};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Viewpoint> waypoints;
    const int n = 2 + static_cast<int>(rng.uniform_int(5));
    for (int i = 0; i < n; ++i) {
      waypoints.push_back({{rng.uniform(0.0, 50.0), rng.uniform(0.0, 50.0),
                            rng.uniform(2.0, 45.0)},
                           ViewpointKind::global});
    }
    bool coincident = false;
    for (int i = 1; i < n; ++i) {
      coincident |= (waypoints[i].position - waypoints[i - 1].position).norm() <= 1e-9;
    }
    if (coincident) continue;

    const PolynomialPath path = plan_segments(waypoints, limits);
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
      CHECK((path.position(path.arrival_time(i)) - waypoints[i].position).norm() < 1e-6);
    }
    CHECK(max_derivative_norm(path, 1) <= limits.v_max * (1.0 + 1e-6));
    CHECK(max_derivative_norm(path, 2) <= limits.a_max * (1.0 + 1e-6));
  }
}

TEST_SUITE_END();
