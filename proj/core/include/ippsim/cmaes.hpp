#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "ippsim/rng.hpp"

namespace ippsim {

struct CmaesConfig {
  int population_lambda = 0;  // 0 selects 4 + floor(3 ln n)
  double sigma0 = 1.0;        // in the caller's coordinate units
  int max_evals = 100;
  double f_tol = 1e-12;  // best-f improvement over the stagnation window
  double x_tol = 1e-12;  // step size times longest covariance axis

  void validate() const;
};

struct CmaesResult {
  Eigen::VectorXd x_best;
  double f_best = 0.0;
  int eval_count = 0;
  int generations = 0;
  std::string stop_reason;
};

// Per-generation trace hook: generation index, distribution mean, best
// fitness seen so far, current step size.
using CmaesTrace =
    std::function<void(int, const Eigen::VectorXd&, double, double)>;

// Rank-based covariance matrix adaptation with weighted recombination,
// cumulative step-size control, and rank-one plus rank-mu covariance
// updates. Non-finite objective values are treated as +infinity; x0 is
// always evaluated, so the result is never worse than the starting point.
CmaesResult cmaes_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, const CmaesConfig& config, Rng& rng,
                           const CmaesTrace& trace = nullptr);

}  // namespace ippsim
