#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ippsim/cmaes.hpp"
#include "ippsim/coverage.hpp"
#include "ippsim/envelope.hpp"
#include "ippsim/grid.hpp"
#include "ippsim/objective.hpp"
#include "ippsim/optimizer.hpp"
#include "ippsim/planner.hpp"
#include "ippsim/sensor.hpp"
#include "ippsim/toml.hpp"
#include "ippsim/trajectory.hpp"

namespace ippsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One scenario: world, sensor, planner, baseline, and experiment settings.
// The defaults reproduce the reference field-trial setup: 50x50 m map at 1 m
// resolution, 120 weeds, 300 s budget, horizon 7, thresholds 0.25/0.75,
// altitude band 2-45 m, lawnmower at 8.66 m.
struct ScenarioConfig {
  std::string name = "default";

  double width_m = 50.0;
  double height_m = 50.0;
  double resolution_m = 1.0;
  int weed_count = 120;

  double half_angle_deg = 45.0;
  double accuracy_ceiling = 0.95;
  double accuracy_floor = 0.5;
  double h_min_m = 2.0;
  double h_max_m = 45.0;

  ClassificationThresholds thresholds;

  double alt_min_m = 2.0;
  double alt_max_m = 45.0;

  DynamicLimits limits;

  int horizon = 7;
  double budget_s = 300.0;
  ObjectiveMode objective_mode = ObjectiveMode::time_varying;
  RefineMode optimizer_mode = RefineMode::local;
  int lattice_levels = 3;

  CmaesConfig cmaes;

  CoverageConfig baseline;

  int trials = 20;
  std::uint64_t base_seed = 1;
  double bin_s = 1.0;

  std::string output_dir = "out";

  GridGeometry geometry() const;
  SensorModel sensor() const;
  FlightEnvelope envelope() const;
  PlannerConfig planner_config() const;
  Eigen::Vector3d start() const;  // map center at the altitude ceiling

  // Throws ConfigError naming the offending key and constraint.
  void validate() const;
};

struct ConfigLoad {
  ScenarioConfig config;
  std::vector<std::string> warnings;  // unknown keys, with nearest-key hints
};

// Applies a parsed table over the defaults and validates.
ConfigLoad config_from_table(const toml::Table& table);

// Parse errors, type errors, and validation errors all surface as
// ConfigError with file/line/column or key context.
ConfigLoad load_config(const std::string& path);

// Canonical serialization of every effective setting; reparsing it
// reproduces the config.
std::string effective_config_toml(const ScenarioConfig& cfg);

// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string config_digest(const ScenarioConfig& cfg);

const char* to_string(ObjectiveMode mode);
const char* to_string(RefineMode mode);
const char* to_string(SweepDirection direction);

}  // namespace ippsim
