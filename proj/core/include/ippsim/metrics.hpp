#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ippsim/grid.hpp"

namespace ippsim {

struct MeasurementRow {
  double t_s = 0.0;
  double entropy_bits = 0.0;
  double classification_rate = 0.0;
  double f1 = 0.0;
};

struct TrialRecord {
  std::vector<MeasurementRow> events;  // t_s strictly increasing, first at t=0
  std::string config_digest;
  std::uint64_t seed = 0;
};

// Fraction of cells outside the unclassified band.
double classification_rate(const OccupancyGrid& belief, const ClassificationThresholds& thr);

// F1 over the weed-positive class; a cell is predicted weed iff its belief
// probability is at least delta_w. Returns 0 when precision and recall are
// both undefined or zero.
double f1_score(const OccupancyGrid& belief, const GroundTruthMap& truth,
                const ClassificationThresholds& thr);

enum class Metric { entropy, classification_rate, f1 };

// Step-constant carry-forward: the metric value of the latest event at or
// before t. Requires an event at t=0.
double metric_at(const TrialRecord& record, double t, Metric metric);

// Uniform grid 0, bin_s, ..., covering [0, horizon_s] with the end included.
std::vector<double> time_grid(double horizon_s, double bin_s = 1.0);

struct AggregateSeries {
  std::vector<double> time_bins;
  std::vector<double> mean;
  std::vector<double> ci95_low;
  std::vector<double> ci95_high;
  int n_trials = 0;
};

// Per-bin mean with normal-approximation 95% bounds
// (mean +/- 1.96 * sample stdev / sqrt(n)).
AggregateSeries aggregate_metric(const std::vector<TrialRecord>& records,
                                 const std::vector<double>& time_bins, Metric metric);

struct CdfTable {
  std::vector<double> time_bins;
  std::vector<double> quantiles;            // probability levels, ascending
  std::vector<std::vector<double>> values;  // values[bin][quantile]
  int n_trials = 0;
};

// Empirical distribution of per-trial entropy across trials, per time bin,
// summarized at the given quantile levels (linear interpolation between
// order statistics).
CdfTable entropy_cdf(const std::vector<TrialRecord>& records,
                     const std::vector<double>& time_bins,
                     const std::vector<double>& quantiles = {0.025, 0.25, 0.5, 0.75, 0.975});

// Linear-interpolation quantile of an unsorted sample (the spreadsheet
// convention: h = (n-1)q between order statistics).
double sample_quantile(std::vector<double> values, double q);

}  // namespace ippsim
