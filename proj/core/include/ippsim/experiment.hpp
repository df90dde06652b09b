#pragma once

#include <cstdint>
#include <vector>

#include "ippsim/config.hpp"
#include "ippsim/metrics.hpp"
#include "ippsim/observer.hpp"

namespace ippsim {

enum class PlannerChoice { adaptive, lawnmower };

const char* to_string(PlannerChoice planner);

// One full mission on a freshly generated world. World generation and
// measurement noise use streams derived from `seed`, so the paired planners
// see identical worlds for identical seeds.
TrialRecord run_trial(const ScenarioConfig& cfg, PlannerChoice planner, std::uint64_t seed,
                      MissionObserver* observer = nullptr);

struct ExperimentResult {
  std::vector<TrialRecord> records;  // trial k at index k, seed = base_seed + k
  AggregateSeries entropy;
  AggregateSeries classification;
  AggregateSeries f1;
  CdfTable cdf;
};

// Trials are independent and may run on `jobs` threads; records are reduced
// by trial index, so the output is identical for any job count.
ExperimentResult run_experiment(const ScenarioConfig& cfg, PlannerChoice planner,
                                int n_trials, int jobs);

struct FinalSummary {
  double entropy_mean = 0.0;
  double classification_rate_mean = 0.0;
  double f1_mean = 0.0;
};

// Means of each metric's final value across records.
FinalSummary summarize_final(const std::vector<TrialRecord>& records);

}  // namespace ippsim
