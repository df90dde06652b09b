#include "ippsim/cmaes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ippsim {

void CmaesConfig::validate() const {
  if (population_lambda != 0 && population_lambda < 4)
    throw std::invalid_argument("population_lambda must be 0 (auto) or at least 4");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
  if (max_evals < 1) throw std::invalid_argument("max_evals must be positive");
  if (!(f_tol >= 0.0) || !(x_tol >= 0.0))
    throw std::invalid_argument("tolerances must be non-negative");
}

CmaesResult cmaes_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, const CmaesConfig& config, Rng& rng,
                           const CmaesTrace& trace) {
  config.validate();
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");

  const int lambda = config.population_lambda != 0
                         ? config.population_lambda
                         : 4 + static_cast<int>(std::floor(3.0 * std::log(n)));
  if (config.max_evals < lambda)
    throw std::invalid_argument("max_evals must cover one population");
  const int mu = lambda / 2;

  Eigen::VectorXd weights(mu);
  for (int i = 0; i < mu; ++i)
    weights(i) = std::log((lambda + 1) / 2.0) - std::log(i + 1.0);
  weights /= weights.sum();
  const double mu_eff = 1.0 / weights.squaredNorm();

  const double c_sigma = (mu_eff + 2.0) / (n + mu_eff + 5.0);
  const double d_sigma =
      1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (n + 1.0)) - 1.0) + c_sigma;
  const double c_c = (4.0 + mu_eff / n) / (n + 4.0 + 2.0 * mu_eff / n);
  const double c_1 = 2.0 / ((n + 1.3) * (n + 1.3) + mu_eff);
  const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) /
                                              ((n + 2.0) * (n + 2.0) + mu_eff));
  const double chi_n =
      std::sqrt(static_cast<double>(n)) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));

  Eigen::VectorXd mean = x0;
  double sigma = config.sigma0;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd eigvec = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd eigval_sqrt = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd p_sigma = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd p_c = Eigen::VectorXd::Zero(n);

  const auto safe_eval = [&](const Eigen::VectorXd& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  CmaesResult result;
  result.x_best = x0;
  result.f_best = safe_eval(x0);
  result.eval_count = 1;

  // Best-ever fitness after each evaluation, for the stagnation stop. The
  // window spans about 10 + 30n/lambda generations; shorter windows abort
  // hard objectives before step-size adaptation can make first progress.
  std::deque<std::pair<int, double>> history;
  history.emplace_back(result.eval_count, result.f_best);
  const int window = 10 * lambda + 30 * n;

  std::vector<Eigen::VectorXd> samples(static_cast<std::size_t>(lambda));
  std::vector<double> fitness(static_cast<std::size_t>(lambda));
  std::vector<int> order(static_cast<std::size_t>(lambda));

  for (int gen = 0;; ++gen) {
    if (result.eval_count + lambda > config.max_evals) {
      result.stop_reason = "max_evals";
      break;
    }

    for (int k = 0; k < lambda; ++k) {
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z(i) = rng.normal();
      samples[static_cast<std::size_t>(k)] =
          mean + sigma * (eigvec * eigval_sqrt.cwiseProduct(z));
      fitness[static_cast<std::size_t>(k)] = safe_eval(samples[static_cast<std::size_t>(k)]);
      ++result.eval_count;
    }

    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return fitness[static_cast<std::size_t>(a)] < fitness[static_cast<std::size_t>(b)];
    });
    if (fitness[static_cast<std::size_t>(order[0])] < result.f_best) {
      result.f_best = fitness[static_cast<std::size_t>(order[0])];
      result.x_best = samples[static_cast<std::size_t>(order[0])];
    }
    history.emplace_back(result.eval_count, result.f_best);

    const Eigen::VectorXd mean_old = mean;
    mean.setZero();
    for (int i = 0; i < mu; ++i)
      mean += weights(i) * samples[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];

    const Eigen::VectorXd shift = (mean - mean_old) / sigma;
    const Eigen::MatrixXd cov_inv_sqrt =
        eigvec * eigval_sqrt.cwiseInverse().asDiagonal() * eigvec.transpose();
    p_sigma = (1.0 - c_sigma) * p_sigma +
              std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * (cov_inv_sqrt * shift);
    const double expected_decay =
        std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * (gen + 1)));
    const bool h_sigma = p_sigma.norm() / expected_decay / chi_n < 1.4 + 2.0 / (n + 1.0);
    p_c = (1.0 - c_c) * p_c +
          (h_sigma ? std::sqrt(c_c * (2.0 - c_c) * mu_eff) : 0.0) * shift;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < mu; ++i) {
      const Eigen::VectorXd y =
          (samples[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] - mean_old) /
          sigma;
      rank_mu += weights(i) * y * y.transpose();
    }
    cov = (1.0 - c_1 - c_mu) * cov +
          c_1 * (p_c * p_c.transpose() + (h_sigma ? 0.0 : c_c * (2.0 - c_c)) * cov) +
          c_mu * rank_mu;
    sigma *= std::exp((c_sigma / d_sigma) * (p_sigma.norm() / chi_n - 1.0));

    cov = (0.5 * (cov + cov.transpose())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success || !std::isfinite(sigma)) {
      result.stop_reason = "numerical";
      break;
    }
    eigvec = es.eigenvectors();
    eigval_sqrt = es.eigenvalues().cwiseMax(1e-30).cwiseSqrt();

    ++result.generations;
    if (trace) trace(gen, mean, result.f_best, sigma);

    while (history.size() > 1 && history[1].first <= result.eval_count - window)
      history.pop_front();
    if (history.front().first <= result.eval_count - window &&
        history.front().second - result.f_best < config.f_tol) {
      result.stop_reason = "f_tol";
      break;
    }
    if (sigma * eigval_sqrt.maxCoeff() < config.x_tol) {
      result.stop_reason = "x_tol";
      break;
    }
  }
  return result;
}

}  // namespace ippsim
