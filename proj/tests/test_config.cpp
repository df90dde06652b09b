#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ippsim/config.hpp"
#include "ippsim/toml.hpp"

using namespace ippsim;

namespace {

ScenarioConfig from_text(const std::string& text,
                         std::vector<std::string>* warnings = nullptr) {
  const ConfigLoad load = config_from_table(toml::parse(text));
  if (warnings) *warnings = load.warnings;
  return load.config;
}

// Message of the ConfigError raised by the text, empty when none is thrown.
std::string config_error_of(const std::string& text) {
  try {
    config_from_table(toml::parse(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

struct TempFile {
  std::filesystem::path path;
  TempFile(const std::string& name, const std::string& content)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path) << content;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("an empty table yields the reference scenario") {
  std::vector<std::string> warnings;
  const ScenarioConfig cfg = from_text("", &warnings);
  CHECK(warnings.empty());

  CHECK(cfg.name == "default");
  CHECK(cfg.width_m == 50.0);
  CHECK(cfg.height_m == 50.0);
  CHECK(cfg.resolution_m == 1.0);
  CHECK(cfg.weed_count == 120);
  CHECK(cfg.half_angle_deg == 45.0);
  CHECK(cfg.accuracy_ceiling == 0.95);
  CHECK(cfg.accuracy_floor == 0.5);
  CHECK(cfg.h_min_m == 2.0);
  CHECK(cfg.h_max_m == 45.0);
  CHECK(cfg.thresholds.delta_nw == 0.25);
  CHECK(cfg.thresholds.delta_w == 0.75);
  CHECK(cfg.alt_min_m == 2.0);
  CHECK(cfg.alt_max_m == 45.0);
  CHECK(cfg.horizon == 7);
  CHECK(cfg.budget_s == 300.0);
  CHECK(cfg.objective_mode == ObjectiveMode::time_varying);
  CHECK(cfg.optimizer_mode == RefineMode::local);
  CHECK(cfg.lattice_levels == 3);
  CHECK(cfg.baseline.altitude_m == doctest::Approx(8.66));
  CHECK(cfg.baseline.overlap_frac == 0.0);
  CHECK(cfg.trials == 20);
  CHECK(cfg.base_seed == 1);
  CHECK(cfg.bin_s == 1.0);
  CHECK(cfg.output_dir == "out");

  CHECK(cfg.geometry().cell_count() == 2500);
  const Eigen::Vector3d start = cfg.start();
  CHECK(start.x() == 25.0);
  CHECK(start.y() == 25.0);
  CHECK(start.z() == 45.0);

  const PlannerConfig pc = cfg.planner_config();
  CHECK(pc.horizon == 7);
  CHECK(pc.budget_s == 300.0);
  CHECK(pc.rng_seed == cfg.base_seed);
}

TEST_CASE("table values override the defaults") {
  const std::string text = R"(
name = "bench"

[map]
width_m = 40
height_m = 30
resolution_m = 0.5
weed_count = 10

[planner]
horizon = 3
objective = "classify"
optimizer = "global"

[experiment]
trials = 5
base_seed = 99

[output]
directory = "results"
)";
  std::vector<std::string> warnings;
  const ScenarioConfig cfg = from_text(text, &warnings);
  CHECK(warnings.empty());
  CHECK(cfg.name == "bench");
  CHECK(cfg.width_m == 40.0);
  CHECK(cfg.height_m == 30.0);
  CHECK(cfg.resolution_m == 0.5);
  CHECK(cfg.weed_count == 10);
  CHECK(cfg.horizon == 3);
  CHECK(cfg.objective_mode == ObjectiveMode::classify);
  CHECK(cfg.optimizer_mode == RefineMode::global);
  CHECK(cfg.trials == 5);
  CHECK(cfg.base_seed == 99);
  CHECK(cfg.output_dir == "results");
  CHECK(cfg.geometry().cells_x() == 80);
  CHECK(cfg.geometry().cells_y() == 60);
}

TEST_CASE("unknown keys warn and name the nearest valid key") {
  std::vector<std::string> warnings;
  from_text("[planner]\nhorizonn = 5\n", &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(contains(warnings[0], "unknown key 'planner.horizonn'"));
  CHECK(contains(warnings[0], "nearest valid key: 'planner.horizon'"));

  from_text("[experiment]\ntrails = 5\n", &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(contains(warnings[0], "'experiment.trials'"));
}

TEST_CASE("type errors name the key") {
  CHECK(contains(config_error_of("[map]\nwidth_m = \"wide\"\n"),
                 "map.width_m: expected a number"));
  CHECK(contains(config_error_of("[planner]\nhorizon = 2.5\n"),
                 "planner.horizon: expected an integer"));
  CHECK(contains(config_error_of("[experiment]\nbase_seed = -4\n"),
                 "experiment.base_seed: expected a non-negative integer"));
  CHECK(contains(config_error_of("[planner]\nobjective = \"speed\"\n"),
                 "must be one of info, classify, time_varying"));
  CHECK(contains(config_error_of("name = 3\n"), "name: expected a string"));
}

TEST_CASE("validation errors name the key and the constraint") {
  CHECK(contains(config_error_of("[thresholds]\ndelta_nw = 0.8\ndelta_w = 0.3\n"),
                 "thresholds.delta_w: must exceed thresholds.delta_nw"));
  CHECK(contains(config_error_of("[map]\nweed_count = 2501\n"),
                 "map.weed_count: must not exceed the cell count"));
  CHECK(contains(config_error_of("[map]\nwidth_m = 50.3\n"),
                 "map.width_m: must be an integer multiple"));
  CHECK(contains(config_error_of("[planner]\nbudget_s = -5.0\n"), "planner.budget_s"));
  CHECK(contains(config_error_of("[baseline]\naltitude_m = 100.0\n"),
                 "baseline.altitude_m: must lie within the flight envelope"));
  CHECK(contains(config_error_of("[baseline]\noverlap = 1.0\n"), "baseline.overlap"));
  CHECK(contains(config_error_of("[sensor]\naccuracy_floor = 0.4\n"),
                 "sensor.accuracy_floor: must be at least 0.5"));
  CHECK(contains(config_error_of("[sensor]\naccuracy_ceiling = 1.0\n"),
                 "sensor.accuracy_ceiling: must be less than 1"));
  CHECK(contains(config_error_of("[cmaes]\nlambda = 2\n"), "cmaes.lambda"));
}

TEST_CASE("the effective serialization reparses to the same digest") {
  const std::string text = R"(
name = "roundtrip"
[map]
width_m = 40
resolution_m = 0.5
[planner]
horizon = 5
objective = "info"
[baseline]
direction = "along_y"
)";
  const ScenarioConfig cfg = from_text(text);
  const std::string serialized = effective_config_toml(cfg);

  std::vector<std::string> warnings;
  const ScenarioConfig reparsed = from_text(serialized, &warnings);
  CHECK(warnings.empty());  // every emitted key is a known key
  CHECK(config_digest(reparsed) == config_digest(cfg));
  CHECK(reparsed.name == "roundtrip");
  CHECK(reparsed.objective_mode == ObjectiveMode::info);
  CHECK(reparsed.baseline.direction == SweepDirection::along_y);
}

TEST_CASE("the digest is stable for the defaults and sensitive to changes") {
  ScenarioConfig cfg;
  CHECK(config_digest(cfg) == "d29963b73f0a856b");
  cfg.horizon = 5;
  CHECK(config_digest(cfg) != "d29963b73f0a856b");
}

TEST_CASE("scalar parsing covers the supported subset") {
  const toml::Table table = toml::parse(R"(
top = "level"  # trailing comment
[section]
text = "a \"quoted\" value"
count = 12
ratio = -0.25
flag = true
[section.nested]
deep = 1
)");
  CHECK(table.at("top").str == "level");
  CHECK(table.at("section.text").str == "a \"quoted\" value");
  CHECK(table.at("section.count").integer == 12);
  CHECK(table.at("section.count").number == 12.0);
  CHECK(table.at("section.ratio").number == -0.25);
  CHECK(table.at("section.flag").boolean == true);
  CHECK(table.at("section.nested.deep").integer == 1);
}

TEST_CASE("parse errors carry line and column") {
  try {
    toml::parse("x = 1\nx = 2\n");
    FAIL("expected a parse error");
  } catch (const toml::ParseError& e) {
    CHECK(contains(e.what(), "duplicate key 'x'"));
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(toml::parse("x = [1, 2]\n"), toml::ParseError);
  CHECK_THROWS_AS(toml::parse("x = \"unterminated\n"), toml::ParseError);
  CHECK_THROWS_AS(toml::parse("x =\n"), toml::ParseError);
  CHECK_THROWS_AS(toml::parse("[bad\n"), toml::ParseError);
}

TEST_CASE("file loading wraps every failure as a config error") {
  CHECK_THROWS_AS(load_config("/nonexistent/scenario.toml"), ConfigError);
  try {
    load_config("/nonexistent/scenario.toml");
  } catch (const ConfigError& e) {
    CHECK(contains(e.what(), "cannot open config file"));
  }

  const TempFile bad("ippsim_test_bad.toml", "x = [1]\n");
  try {
    load_config(bad.path.string());
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(contains(e.what(), bad.path.string()));
  }

  const TempFile good("ippsim_test_good.toml",
                      "[planner]\nhorizon = 4\nhorizonn = 2\n");
  const ConfigLoad load = load_config(good.path.string());
  CHECK(load.config.horizon == 4);
  REQUIRE(load.warnings.size() == 1);
  CHECK(contains(load.warnings[0], "planner.horizonn"));
}

TEST_SUITE_END();
