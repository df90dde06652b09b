#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ippsim/cmaes.hpp"
#include "ippsim/rng.hpp"

using namespace ippsim;

namespace {

double sphere(const Eigen::VectorXd& x) { return x.squaredNorm(); }

double rosenbrock(const Eigen::VectorXd& x) {
  double f = 0.0;
  for (int i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    f += 100.0 * a * a + b * b;
  }
  return f;
}

CmaesConfig exhaustive(int max_evals) {
  CmaesConfig config;
  config.max_evals = max_evals;
  config.f_tol = 0.0;  // disable early stopping; only the budget terminates
  config.x_tol = 0.0;
  return config;
}

}  // namespace

TEST_SUITE_BEGIN("cmaes");

TEST_CASE("sphere in ten dimensions converges fast") {
  CmaesConfig config = exhaustive(5000);
  config.sigma0 = 2.0;
  Rng rng(1);
  const CmaesResult result =
      cmaes_minimize(sphere, Eigen::VectorXd::Constant(10, 3.0), config, rng);
  CHECK(result.f_best < 1e-10);
  CHECK(result.eval_count <= 5000);
  CHECK(result.x_best.norm() < 1e-4);
}

TEST_CASE("rosenbrock in five dimensions reaches the valley floor") {
  CmaesConfig config = exhaustive(50000);
  config.sigma0 = 0.5;
  Rng rng(2);
  const CmaesResult result =
      cmaes_minimize(rosenbrock, Eigen::VectorXd::Zero(5), config, rng);
  CHECK(result.f_best < 1e-6);
  CHECK(result.eval_count <= 50000);
  CHECK((result.x_best - Eigen::VectorXd::Ones(5)).norm() < 1e-2);
}

TEST_CASE("the starting point is always evaluated, so results never regress") {
  // x0 is the exact optimum; whatever the search does, it cannot lose it.
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(4, 1.5);
  auto f = [&x0](const Eigen::VectorXd& x) { return (x - x0).squaredNorm(); };
  CmaesConfig config = exhaustive(200);
  config.sigma0 = 10.0;  // absurd step size to invite divergence
  Rng rng(3);
  const CmaesResult result = cmaes_minimize(f, x0, config, rng);
  CHECK(result.f_best == 0.0);
  CHECK((result.x_best - x0).norm() == 0.0);
}

TEST_CASE("constant objectives terminate cleanly") {
  CmaesConfig config;
  config.max_evals = 5000;
  config.sigma0 = 1.0;
  Rng rng(4);
  const CmaesResult result = cmaes_minimize(
      [](const Eigen::VectorXd&) { return 7.25; }, Eigen::VectorXd::Zero(3), config, rng);
  CHECK(result.f_best == 7.25);
  CHECK((result.stop_reason == "f_tol" || result.stop_reason == "max_evals" ||
         result.stop_reason == "x_tol"));
}

TEST_CASE("same seed reproduces the run exactly") {
  CmaesConfig config = exhaustive(600);
  config.sigma0 = 1.0;
  Rng rng_a(5);
  Rng rng_b(5);
  const CmaesResult a = cmaes_minimize(sphere, Eigen::VectorXd::Constant(6, 2.0), config, rng_a);
  const CmaesResult b = cmaes_minimize(sphere, Eigen::VectorXd::Constant(6, 2.0), config, rng_b);
  CHECK(a.f_best == b.f_best);
  CHECK(a.eval_count == b.eval_count);
  CHECK(a.generations == b.generations);
  CHECK((a.x_best - b.x_best).norm() == 0.0);
}

TEST_CASE("monotone transforms leave the search trajectory unchanged") {
  // Rank-based selection only sees the ordering of fitness values, so an
  // increasing affine transform must produce the identical mean sequence.
  CmaesConfig config = exhaustive(400);
  config.sigma0 = 1.5;

  auto run = [&config](const std::function<double(const Eigen::VectorXd&)>& f) {
    std::vector<Eigen::VectorXd> means;
    Rng rng(6);
    cmaes_minimize(f, Eigen::VectorXd::Constant(5, -2.0), config, rng,
                   [&means](int, const Eigen::VectorXd& mean, double, double) {
                     means.push_back(mean);
                   });
    return means;
  };

  const auto plain = run(sphere);
  const auto transformed =
      run([](const Eigen::VectorXd& x) { return 2.0 * sphere(x) + 5.0; });
  REQUIRE(plain.size() == transformed.size());
  REQUIRE(!plain.empty());
  for (std::size_t g = 0; g < plain.size(); ++g) {
    CHECK((plain[g] - transformed[g]).norm() == 0.0);
  }
}

TEST_CASE("translating the objective translates the search") {
  CmaesConfig config = exhaustive(400);
  config.sigma0 = 1.0;
  const Eigen::VectorXd shift = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);

  auto run = [&config](const std::function<double(const Eigen::VectorXd&)>& f,
                       const Eigen::VectorXd& x0) {
    std::vector<Eigen::VectorXd> means;
    Rng rng(7);
    cmaes_minimize(f, x0, config, rng,
                   [&means](int, const Eigen::VectorXd& mean, double, double) {
                     means.push_back(mean);
                   });
    return means;
  };

  const auto origin = run(sphere, Eigen::VectorXd::Zero(4));
  const auto moved = run(
      [&shift](const Eigen::VectorXd& x) { return (x - shift).squaredNorm(); }, shift);
  REQUIRE(origin.size() == moved.size());
  for (std::size_t g = 0; g < origin.size(); ++g) {
    CHECK((moved[g] - origin[g] - shift).norm() < 1e-9);
  }
}

TEST_CASE("non-finite fitness values are quarantined") {
  auto holed = [](const Eigen::VectorXd& x) {
    if (x[0] > 0.25) return std::nan("");
    return sphere(x);
  };
  CmaesConfig config = exhaustive(2000);
  config.sigma0 = 1.0;
  Rng rng(8);
  const CmaesResult result =
      cmaes_minimize(holed, Eigen::VectorXd::Constant(3, -1.0), config, rng);
  CHECK(std::isfinite(result.f_best));
  CHECK(result.f_best < 1e-6);  // optimum at the origin is inside the feasible half
}

TEST_CASE("loose x_tol stops the run early") {
  CmaesConfig config;
  config.sigma0 = 1.0;
  config.max_evals = 100000;
  config.f_tol = 0.0;
  config.x_tol = 1e-3;
  Rng rng(9);
  const CmaesResult result =
      cmaes_minimize(sphere, Eigen::VectorXd::Constant(4, 2.0), config, rng);
  CHECK(result.stop_reason == "x_tol");
  CHECK(result.eval_count < 100000);
}

TEST_CASE("population override and the auto formula") {
  // Auto lambda is 4 + floor(3 ln n); for n = 10 that is 10 per generation.
  CmaesConfig config = exhaustive(101);
  Rng rng(10);
  const CmaesResult result =
      cmaes_minimize(sphere, Eigen::VectorXd::Constant(10, 1.0), config, rng);
  // 1 for x0, then full generations of 10 while they fit the budget.
  CHECK(result.eval_count == 101);
  CHECK(result.generations == 10);

  CmaesConfig fixed = exhaustive(101);
  fixed.population_lambda = 20;
  Rng rng2(10);
  const CmaesResult wide =
      cmaes_minimize(sphere, Eigen::VectorXd::Constant(10, 1.0), fixed, rng2);
  CHECK(wide.generations == 5);
}

TEST_CASE("configuration validation") {
  CmaesConfig config;
  CHECK_NOTHROW(config.validate());
  config.population_lambda = 3;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.population_lambda = 0;
  config.sigma0 = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.sigma0 = 5.0;
  config.max_evals = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.max_evals = 1000;
  config.f_tol = -1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_SUITE_END();
