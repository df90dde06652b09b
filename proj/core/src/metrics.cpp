#include "ippsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ippsim {

double classification_rate(const OccupancyGrid& belief, const ClassificationThresholds& thr) {
  const int total = belief.geometry().cell_count();
  return static_cast<double>(total - belief.unclassified_count(thr)) / total;
}

double f1_score(const OccupancyGrid& belief, const GroundTruthMap& truth,
                const ClassificationThresholds& thr) {
  if (!(belief.geometry() == truth.geometry()))
    throw std::invalid_argument("belief and truth geometries differ");
  long tp = 0, fp = 0, fn = 0;
  const int n = belief.geometry().cell_count();
  for (int i = 0; i < n; ++i) {
    const bool predicted = belief.probability_flat(i) >= thr.delta_w;
    const bool actual = truth.occupied_flat(i);
    if (predicted && actual) ++tp;
    else if (predicted) ++fp;
    else if (actual) ++fn;
  }
  if (tp == 0) return 0.0;  // covers precision+recall = 0
  const double precision = static_cast<double>(tp) / (tp + fp);
  const double recall = static_cast<double>(tp) / (tp + fn);
  return 2.0 * precision * recall / (precision + recall);
}

double metric_at(const TrialRecord& record, double t, Metric metric) {
  if (record.events.empty() || record.events.front().t_s > t)
    throw std::invalid_argument("no event at or before requested time");
  // Last event with t_s <= t.
  auto it = std::upper_bound(record.events.begin(), record.events.end(), t,
                             [](double v, const MeasurementRow& r) { return v < r.t_s; });
  const MeasurementRow& row = *(it - 1);
  switch (metric) {
    case Metric::entropy: return row.entropy_bits;
    case Metric::classification_rate: return row.classification_rate;
    case Metric::f1: return row.f1;
  }
  throw std::logic_error("unreachable metric");
}

std::vector<double> time_grid(double horizon_s, double bin_s) {
  if (!(horizon_s >= 0.0) || !(bin_s > 0.0))
    throw std::invalid_argument("time grid needs horizon >= 0 and bin > 0");
  std::vector<double> bins;
  for (int k = 0;; ++k) {
    const double t = k * bin_s;
    if (t > horizon_s + 1e-12) break;
    bins.push_back(t);
  }
  if (bins.empty() || bins.back() < horizon_s - 1e-12) bins.push_back(horizon_s);
  return bins;
}

AggregateSeries aggregate_metric(const std::vector<TrialRecord>& records,
                                 const std::vector<double>& time_bins, Metric metric) {
  if (records.empty()) throw std::invalid_argument("aggregate needs at least one record");
  const int n = static_cast<int>(records.size());
  AggregateSeries out;
  out.time_bins = time_bins;
  out.n_trials = n;
  out.mean.reserve(time_bins.size());
  out.ci95_low.reserve(time_bins.size());
  out.ci95_high.reserve(time_bins.size());
  for (double t : time_bins) {
    double sum = 0.0;
    for (const TrialRecord& r : records) sum += metric_at(r, t, metric);
    const double mean = sum / n;
    double ss = 0.0;
    for (const TrialRecord& r : records) {
      const double d = metric_at(r, t, metric) - mean;
      ss += d * d;
    }
    const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(n));
    out.mean.push_back(mean);
    out.ci95_low.push_back(mean - half);
    out.ci95_high.push_back(mean + half);
  }
  return out;
}

double sample_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

CdfTable entropy_cdf(const std::vector<TrialRecord>& records,
                     const std::vector<double>& time_bins,
                     const std::vector<double>& quantiles) {
  if (records.empty()) throw std::invalid_argument("cdf needs at least one record");
  CdfTable out;
  out.time_bins = time_bins;
  out.quantiles = quantiles;
  out.n_trials = static_cast<int>(records.size());
  out.values.reserve(time_bins.size());
  std::vector<double> sample(records.size());
  for (double t : time_bins) {
    for (std::size_t i = 0; i < records.size(); ++i)
      sample[i] = metric_at(records[i], t, Metric::entropy);
    std::vector<double> row;
    row.reserve(quantiles.size());
    for (double q : quantiles) row.push_back(sample_quantile(sample, q));
    out.values.push_back(std::move(row));
  }
  return out;
}

}  // namespace ippsim
