// ippsim: adaptive informative path planning benchmark driver.
//
// Subcommands: run one planner, compare both on paired seeds, dump one
// mission's trajectory and event stream, or just validate a config file.
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ippsim/config.hpp"
#include "ippsim/event_log.hpp"
#include "ippsim/experiment.hpp"
#include "ippsim/io.hpp"
#include "ippsim/trajectory.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonFlags {
  std::string config_path;
  std::string planner = "adaptive";
  int trials = -1;
  std::int64_t seed = -1;
  int jobs = 1;
  std::string out;
};

// Flag > IPPSIM_OUT_ROOT > config file.
fs::path resolve_out_root(const ippsim::ScenarioConfig& cfg, const std::string& out_flag) {
  if (!out_flag.empty()) return out_flag;
  if (const char* env = std::getenv("IPPSIM_OUT_ROOT"); env != nullptr && env[0] != '\0') {
    return env;
  }
  return cfg.output_dir;
}

ippsim::ScenarioConfig load_with_warnings(const CommonFlags& flags) {
  ippsim::ConfigLoad loaded = ippsim::load_config(flags.config_path);
  for (const std::string& warning : loaded.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  ippsim::ScenarioConfig cfg = loaded.config;
  if (flags.trials >= 0) cfg.trials = flags.trials;
  if (flags.seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(flags.seed);
  cfg.validate();
  return cfg;
}

ippsim::PlannerChoice parse_planner(const std::string& name) {
  if (name == "adaptive") return ippsim::PlannerChoice::adaptive;
  if (name == "lawnmower") return ippsim::PlannerChoice::lawnmower;
  throw ippsim::ConfigError("planner: expected 'adaptive' or 'lawnmower', got '" + name + "'");
}

void write_planner_outputs(const fs::path& dir, const ippsim::ScenarioConfig& cfg,
                           ippsim::PlannerChoice planner, const ippsim::ExperimentResult& result) {
  fs::create_directories(dir / "plots");
  for (const ippsim::TrialRecord& record : result.records) {
    ippsim::atomic_write_file(dir / ("trial_" + std::to_string(record.seed) + ".csv"),
                              ippsim::trial_csv(record));
  }
  ippsim::atomic_write_file(dir / "aggregate_entropy.csv", ippsim::aggregate_csv(result.entropy));
  ippsim::atomic_write_file(dir / "aggregate_classification_rate.csv",
                    ippsim::aggregate_csv(result.classification));
  ippsim::atomic_write_file(dir / "aggregate_f1.csv", ippsim::aggregate_csv(result.f1));
  ippsim::atomic_write_file(dir / "cdf_entropy.csv", ippsim::cdf_csv(result.cdf));
  ippsim::atomic_write_file(dir / "effective_config.toml", ippsim::effective_config_toml(cfg));

  const std::string label = ippsim::to_string(planner);
  ippsim::atomic_write_file(dir / "plots" / "entropy.svg",
                    ippsim::series_svg("Map entropy", "time [s]", "entropy [bit]",
                                       {{label, &result.entropy, "#1f77b4"}}));
  ippsim::atomic_write_file(dir / "plots" / "classification_rate.svg",
                    ippsim::series_svg("Classification rate", "time [s]", "rate",
                                       {{label, &result.classification, "#2ca02c"}}));
  ippsim::atomic_write_file(dir / "plots" / "f1.svg",
                    ippsim::series_svg("Weed F1 score", "time [s]", "F1",
                                       {{label, &result.f1, "#d62728"}}));
}

int cmd_run(const CommonFlags& flags) {
  ippsim::ScenarioConfig cfg = load_with_warnings(flags);
  ippsim::PlannerChoice planner = parse_planner(flags.planner);
  ippsim::ExperimentResult result =
      ippsim::run_experiment(cfg, planner, cfg.trials, flags.jobs);

  fs::path dir = resolve_out_root(cfg, flags.out) / cfg.name / ippsim::to_string(planner);
  write_planner_outputs(dir, cfg, planner, result);

  ippsim::FinalSummary summary = ippsim::summarize_final(result.records);
  std::cout << ippsim::to_string(planner) << ": " << cfg.trials << " trials, final entropy "
            << ippsim::format_fixed(summary.entropy_mean) << " bit, classification rate "
            << ippsim::format_fixed(summary.classification_rate_mean) << ", F1 "
            << ippsim::format_fixed(summary.f1_mean) << "\n";
  std::cout << "wrote " << dir.string() << "\n";
  return 0;
}

int cmd_compare(const CommonFlags& flags) {
  ippsim::ScenarioConfig cfg = load_with_warnings(flags);
  fs::path root = resolve_out_root(cfg, flags.out) / cfg.name;

  struct Row {
    ippsim::PlannerChoice planner;
    ippsim::ExperimentResult result;
    ippsim::FinalSummary summary;
  };
  std::vector<Row> rows;
  for (ippsim::PlannerChoice planner :
       {ippsim::PlannerChoice::adaptive, ippsim::PlannerChoice::lawnmower}) {
    Row row{planner, ippsim::run_experiment(cfg, planner, cfg.trials, flags.jobs), {}};
    row.summary = ippsim::summarize_final(row.result.records);
    write_planner_outputs(root / ippsim::to_string(planner), cfg, planner, row.result);
    rows.push_back(std::move(row));
  }

  std::ostringstream summary_csv;
  summary_csv << "planner,final_entropy_bits,final_classification_rate,final_f1\n";
  for (const Row& row : rows) {
    summary_csv << ippsim::to_string(row.planner) << ","
                << ippsim::format_fixed(row.summary.entropy_mean) << ","
                << ippsim::format_fixed(row.summary.classification_rate_mean) << ","
                << ippsim::format_fixed(row.summary.f1_mean) << "\n";
  }
  ippsim::atomic_write_file(root / "summary.csv", summary_csv.str());

  fs::create_directories(root / "plots");
  ippsim::atomic_write_file(root / "plots" / "entropy.svg",
                    ippsim::series_svg("Map entropy", "time [s]", "entropy [bit]",
                                       {{"adaptive", &rows[0].result.entropy, "#1f77b4"},
                                        {"lawnmower", &rows[1].result.entropy, "#ff7f0e"}}));
  ippsim::atomic_write_file(
      root / "plots" / "classification_rate.svg",
      ippsim::series_svg("Classification rate", "time [s]", "rate",
                         {{"adaptive", &rows[0].result.classification, "#1f77b4"},
                          {"lawnmower", &rows[1].result.classification, "#ff7f0e"}}));
  ippsim::atomic_write_file(root / "plots" / "f1.svg",
                    ippsim::series_svg("Weed F1 score", "time [s]", "F1",
                                       {{"adaptive", &rows[0].result.f1, "#1f77b4"},
                                        {"lawnmower", &rows[1].result.f1, "#ff7f0e"}}));

  std::cout << std::left << std::setw(12) << "planner" << std::right << std::setw(16)
            << "final entropy" << std::setw(16) << "class. rate" << std::setw(12) << "F1"
            << "\n";
  for (const Row& row : rows) {
    std::cout << std::left << std::setw(12) << ippsim::to_string(row.planner) << std::right
              << std::setw(16) << ippsim::format_fixed(row.summary.entropy_mean) << std::setw(16)
              << ippsim::format_fixed(row.summary.classification_rate_mean) << std::setw(12)
              << ippsim::format_fixed(row.summary.f1_mean) << "\n";
  }
  std::cout << "wrote " << root.string() << "\n";
  return 0;
}

// Collects the executed portion of every flown path, re-based to mission time.
class SampleCollector : public ippsim::MissionObserver {
 public:
  void on_path(const ippsim::PathEvent& ev) override {
    if (ev.path == nullptr || ev.legs_executed <= 0) return;
    const double t_end = ev.path->arrival_time(static_cast<std::size_t>(ev.legs_executed));
    for (ippsim::TimedState& state : ippsim::sample(*ev.path, 0.02)) {
      if (state.t > t_end + 1e-12) break;
      state.t += ev.t0_s;
      states_.push_back(state);
    }
  }

  const std::vector<ippsim::TimedState>& states() const { return states_; }

 private:
  std::vector<ippsim::TimedState> states_;
};

int cmd_inspect(const CommonFlags& flags) {
  ippsim::ScenarioConfig cfg = load_with_warnings(flags);
  const std::uint64_t seed = flags.seed >= 0 ? static_cast<std::uint64_t>(flags.seed)
                                             : cfg.base_seed;

  std::ostringstream events;
  ippsim::JsonlObserver logger(events, /*log_generations=*/true);
  SampleCollector collector;
  struct Tee : ippsim::MissionObserver {
    ippsim::MissionObserver* a = nullptr;
    ippsim::MissionObserver* b = nullptr;
    void on_selection(const ippsim::SelectionEvent& ev) override {
      a->on_selection(ev);
      b->on_selection(ev);
    }
    void on_refine(const ippsim::RefineEvent& ev) override {
      a->on_refine(ev);
      b->on_refine(ev);
    }
    void on_generation(const ippsim::GenerationEvent& ev) override {
      a->on_generation(ev);
      b->on_generation(ev);
    }
    void on_replan(const ippsim::ReplanEvent& ev) override {
      a->on_replan(ev);
      b->on_replan(ev);
    }
    void on_measurement(const ippsim::MeasurementEvent& ev) override {
      a->on_measurement(ev);
      b->on_measurement(ev);
    }
    void on_path(const ippsim::PathEvent& ev) override {
      a->on_path(ev);
      b->on_path(ev);
    }
  } tee;
  tee.a = &logger;
  tee.b = &collector;

  ippsim::TrialRecord record =
      ippsim::run_trial(cfg, ippsim::PlannerChoice::adaptive, seed, &tee);

  fs::path dir = resolve_out_root(cfg, flags.out) / cfg.name /
                 ("inspect_seed_" + std::to_string(seed));
  fs::create_directories(dir);
  ippsim::atomic_write_file(dir / "events.jsonl", events.str());
  ippsim::atomic_write_file(dir / "samples.csv", ippsim::samples_csv(collector.states()));
  ippsim::atomic_write_file(dir / "metrics.csv", ippsim::trial_csv(record));
  ippsim::atomic_write_file(dir / "effective_config.toml", ippsim::effective_config_toml(cfg));

  std::cout << "seed " << seed << ": " << record.events.size() << " measurements, "
            << collector.states().size() << " trajectory samples\n";
  std::cout << "wrote " << dir.string() << "\n";
  return 0;
}

int cmd_validate(const CommonFlags& flags) {
  ippsim::ScenarioConfig cfg = load_with_warnings(flags);
  std::cout << "ok: " << cfg.name << " (digest " << ippsim::config_digest(cfg) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive informative path planning simulation benchmark"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto add_common = [&flags](CLI::App* cmd, bool with_planner) {
    cmd->add_option("--config", flags.config_path, "Scenario TOML file")->required();
    if (with_planner) {
      cmd->add_option("--planner", flags.planner, "adaptive|lawnmower (default adaptive)");
    }
    cmd->add_option("--trials", flags.trials, "Override experiment.trials");
    cmd->add_option("--seed", flags.seed, "Override experiment.base_seed");
    cmd->add_option("--jobs", flags.jobs, "Worker threads (default 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", flags.out, "Output root (overrides IPPSIM_OUT_ROOT and config)");
  };

  CLI::App* run = app.add_subcommand("run", "Run one planner, write CSVs and plots");
  add_common(run, true);
  CLI::App* compare =
      app.add_subcommand("compare", "Run both planners on paired seeds, write a summary");
  add_common(compare, false);
  CLI::App* inspect = app.add_subcommand(
      "inspect-path", "Run one adaptive trial, dump trajectory samples and events");
  add_common(inspect, false);
  CLI::App* validate = app.add_subcommand("validate", "Load and validate a config file");
  validate->add_option("--config", flags.config_path, "Scenario TOML file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(flags);
    if (compare->parsed()) return cmd_compare(flags);
    if (inspect->parsed()) return cmd_inspect(flags);
    if (validate->parsed()) return cmd_validate(flags);
  } catch (const ippsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
