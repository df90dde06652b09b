#include "ippsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "ippsim/coverage.hpp"
#include "ippsim/mission.hpp"

namespace ippsim {
namespace {

// Stream tags separating a trial's independent random uses.
constexpr std::uint64_t kWorldStream = 1;
constexpr std::uint64_t kMissionStream = 2;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
  return splitmix64(sm);
}

}  // namespace

const char* to_string(PlannerChoice planner) {
  return planner == PlannerChoice::adaptive ? "adaptive" : "lawnmower";
}

TrialRecord run_trial(const ScenarioConfig& cfg, PlannerChoice planner, std::uint64_t seed,
                      MissionObserver* observer) {
  const GridGeometry geometry = cfg.geometry();
  const SensorModel sensor = cfg.sensor();
  const GroundTruthMap truth =
      generate_ground_truth(geometry, cfg.weed_count, derive_seed(seed, kWorldStream));
  OccupancyGrid belief(geometry);
  Rng rng = Rng::derive(seed, kMissionStream);

  PlannerConfig pc = cfg.planner_config();
  pc.rng_seed = seed;
  const Eigen::Vector3d start = cfg.start();

  TrialRecord rec;
  if (planner == PlannerChoice::adaptive) {
    const Lattice lattice =
        build_lattice(geometry, sensor, pc.envelope, cfg.lattice_levels);
    rec = run_mission(truth, belief, sensor, lattice, pc, start, rng, observer);
  } else {
    cfg.baseline.validate(pc.envelope);
    const std::vector<Viewpoint> waypoints =
        plan_coverage(geometry, sensor, cfg.baseline, start);
    rec = run_scripted_mission(truth, belief, sensor, waypoints, pc, start, rng, observer);
  }
  rec.seed = seed;
  rec.config_digest = config_digest(cfg);
  return rec;
}

ExperimentResult run_experiment(const ScenarioConfig& cfg, PlannerChoice planner,
                                int n_trials, int jobs) {
  if (n_trials < 1) throw std::invalid_argument("need at least one trial");
  jobs = std::max(1, std::min(jobs, n_trials));

  ExperimentResult result;
  result.records.resize(static_cast<std::size_t>(n_trials));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&]() {
    for (;;) {
      const int k = next.fetch_add(1);
      if (k >= n_trials) return;
      try {
        result.records[static_cast<std::size_t>(k)] =
            run_trial(cfg, planner, cfg.base_seed + static_cast<std::uint64_t>(k));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const std::vector<double> bins = time_grid(cfg.budget_s, cfg.bin_s);
  result.entropy = aggregate_metric(result.records, bins, Metric::entropy);
  result.classification =
      aggregate_metric(result.records, bins, Metric::classification_rate);
  result.f1 = aggregate_metric(result.records, bins, Metric::f1);
  result.cdf = entropy_cdf(result.records, bins);
  return result;
}

FinalSummary summarize_final(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summary of no records");
  FinalSummary s;
  for (const TrialRecord& r : records) {
    const MeasurementRow& last = r.events.back();
    s.entropy_mean += last.entropy_bits;
    s.classification_rate_mean += last.classification_rate;
    s.f1_mean += last.f1;
  }
  const double n = static_cast<double>(records.size());
  s.entropy_mean /= n;
  s.classification_rate_mean /= n;
  s.f1_mean /= n;
  return s;
}

}  // namespace ippsim
