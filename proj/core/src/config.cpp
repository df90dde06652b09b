#include "ippsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ippsim {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

int edit_distance(std::string_view a, std::string_view b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

struct KeyBinder {
  const toml::Table& table;
  std::vector<std::string> known;
  std::vector<std::string> seen;

  explicit KeyBinder(const toml::Table& t) : table(t) {}

  const toml::Value* find(const std::string& key) {
    known.push_back(key);
    auto it = table.find(key);
    if (it == table.end()) return nullptr;
    seen.push_back(key);
    return &it->second;
  }

  void number(const std::string& key, double& out) {
    if (const toml::Value* v = find(key)) {
      if (v->kind != toml::Value::Kind::integer && v->kind != toml::Value::Kind::floating)
        throw ConfigError(key + ": expected a number");
      out = v->number;
    }
  }

  void integer(const std::string& key, int& out) {
    if (const toml::Value* v = find(key)) {
      if (v->kind != toml::Value::Kind::integer)
        throw ConfigError(key + ": expected an integer");
      out = static_cast<int>(v->integer);
    }
  }

  void seed(const std::string& key, std::uint64_t& out) {
    if (const toml::Value* v = find(key)) {
      if (v->kind != toml::Value::Kind::integer || v->integer < 0)
        throw ConfigError(key + ": expected a non-negative integer");
      out = static_cast<std::uint64_t>(v->integer);
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const toml::Value* v = find(key)) {
      if (v->kind != toml::Value::Kind::string)
        throw ConfigError(key + ": expected a string");
      out = v->str;
    }
  }

  template <typename Enum>
  void choice(const std::string& key, Enum& out,
              const std::vector<std::pair<std::string, Enum>>& options) {
    std::string raw;
    bool present = false;
    if (const toml::Value* v = find(key)) {
      if (v->kind != toml::Value::Kind::string)
        throw ConfigError(key + ": expected a string");
      raw = v->str;
      present = true;
    }
    if (!present) return;
    for (const auto& [name, value] : options) {
      if (raw == name) {
        out = value;
        return;
      }
    }
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (!allowed.empty()) allowed += ", ";
      allowed += name;
    }
    throw ConfigError(key + ": must be one of " + allowed);
  }

  std::vector<std::string> unknown_key_warnings() const {
    std::vector<std::string> warnings;
    for (const auto& [key, value] : table) {
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      std::string nearest;
      int best = std::numeric_limits<int>::max();
      for (const std::string& k : known) {
        const int d = edit_distance(key, k);
        if (d < best) {
          best = d;
          nearest = k;
        }
      }
      warnings.push_back("unknown key '" + key + "' ignored (nearest valid key: '" +
                         nearest + "')");
    }
    return warnings;
  }
};

void check(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) throw ConfigError(key + ": " + constraint);
}

}  // namespace

GridGeometry ScenarioConfig::geometry() const {
  return GridGeometry(width_m, height_m, resolution_m);
}

SensorModel ScenarioConfig::sensor() const {
  return SensorModel(half_angle_deg * kPi / 180.0, accuracy_ceiling, accuracy_floor, h_min_m,
                     h_max_m);
}

FlightEnvelope ScenarioConfig::envelope() const {
  return FlightEnvelope::for_geometry(geometry(), alt_min_m, alt_max_m);
}

PlannerConfig ScenarioConfig::planner_config() const {
  PlannerConfig pc;
  pc.horizon = horizon;
  pc.budget_s = budget_s;
  pc.objective_mode = objective_mode;
  pc.optimizer_mode = optimizer_mode;
  pc.thresholds = thresholds;
  pc.envelope = envelope();
  pc.limits = limits;
  pc.cmaes = cmaes;
  pc.rng_seed = base_seed;
  return pc;
}

Eigen::Vector3d ScenarioConfig::start() const {
  const GridGeometry geo = geometry();
  return {0.5 * (geo.min_x() + geo.max_x()), 0.5 * (geo.min_y() + geo.max_y()), alt_max_m};
}

void ScenarioConfig::validate() const {
  check(!name.empty(), "name", "must not be empty");
  check(width_m > 0.0, "map.width_m", "must be positive");
  check(height_m > 0.0, "map.height_m", "must be positive");
  check(resolution_m > 0.0, "map.resolution_m", "must be positive");
  const double cells_x = width_m / resolution_m;
  const double cells_y = height_m / resolution_m;
  check(std::abs(cells_x - std::round(cells_x)) < 1e-9, "map.width_m",
        "must be an integer multiple of map.resolution_m");
  check(std::abs(cells_y - std::round(cells_y)) < 1e-9, "map.height_m",
        "must be an integer multiple of map.resolution_m");
  check(weed_count >= 0, "map.weed_count", "must be non-negative");
  check(weed_count <= static_cast<int>(std::round(cells_x) * std::round(cells_y)),
        "map.weed_count", "must not exceed the cell count");

  check(half_angle_deg > 0.0 && half_angle_deg < 90.0, "sensor.half_angle_deg",
        "must lie in (0, 90)");
  check(accuracy_floor >= 0.5, "sensor.accuracy_floor", "must be at least 0.5");
  check(accuracy_ceiling > accuracy_floor, "sensor.accuracy_ceiling",
        "must exceed sensor.accuracy_floor");
  check(accuracy_ceiling < 1.0, "sensor.accuracy_ceiling", "must be less than 1");
  check(h_min_m > 0.0, "sensor.h_min_m", "must be positive");
  check(h_max_m > h_min_m, "sensor.h_max_m", "must exceed sensor.h_min_m");

  check(thresholds.delta_nw > 0.0 && thresholds.delta_nw < 1.0, "thresholds.delta_nw",
        "must lie in (0, 1)");
  check(thresholds.delta_w > 0.0 && thresholds.delta_w < 1.0, "thresholds.delta_w",
        "must lie in (0, 1)");
  check(thresholds.delta_nw < thresholds.delta_w, "thresholds.delta_w",
        "must exceed thresholds.delta_nw");

  check(alt_min_m > 0.0, "envelope.alt_min_m", "must be positive");
  check(alt_max_m > alt_min_m, "envelope.alt_max_m", "must exceed envelope.alt_min_m");

  check(limits.v_max > 0.0, "limits.v_max", "must be positive");
  check(limits.a_max > 0.0, "limits.a_max", "must be positive");

  check(horizon >= 1, "planner.horizon", "must be at least 1");
  check(budget_s > 0.0, "planner.budget_s", "must be positive");
  check(lattice_levels >= 1, "planner.lattice_levels", "must be at least 1");

  check(cmaes.population_lambda == 0 || cmaes.population_lambda >= 4, "cmaes.lambda",
        "must be 0 (auto) or at least 4");
  check(cmaes.sigma0 > 0.0, "cmaes.sigma0", "must be positive");
  check(cmaes.max_evals >= 1, "cmaes.max_evals", "must be positive");
  check(cmaes.f_tol >= 0.0, "cmaes.f_tol", "must be non-negative");
  check(cmaes.x_tol >= 0.0, "cmaes.x_tol", "must be non-negative");

  check(baseline.altitude_m >= alt_min_m && baseline.altitude_m <= alt_max_m,
        "baseline.altitude_m", "must lie within the flight envelope");
  check(baseline.overlap_frac >= 0.0 && baseline.overlap_frac < 1.0, "baseline.overlap",
        "must lie in [0, 1)");

  check(trials >= 1, "experiment.trials", "must be at least 1");
  check(bin_s > 0.0, "experiment.bin_s", "must be positive");
  check(!output_dir.empty(), "output.directory", "must not be empty");
}

ConfigLoad config_from_table(const toml::Table& table) {
  ConfigLoad load;
  ScenarioConfig& cfg = load.config;
  KeyBinder bind(table);

  bind.string("name", cfg.name);
  bind.number("map.width_m", cfg.width_m);
  bind.number("map.height_m", cfg.height_m);
  bind.number("map.resolution_m", cfg.resolution_m);
  bind.integer("map.weed_count", cfg.weed_count);

  bind.number("sensor.half_angle_deg", cfg.half_angle_deg);
  bind.number("sensor.accuracy_ceiling", cfg.accuracy_ceiling);
  bind.number("sensor.accuracy_floor", cfg.accuracy_floor);
  bind.number("sensor.h_min_m", cfg.h_min_m);
  bind.number("sensor.h_max_m", cfg.h_max_m);

  bind.number("thresholds.delta_nw", cfg.thresholds.delta_nw);
  bind.number("thresholds.delta_w", cfg.thresholds.delta_w);

  bind.number("envelope.alt_min_m", cfg.alt_min_m);
  bind.number("envelope.alt_max_m", cfg.alt_max_m);

  bind.number("limits.v_max", cfg.limits.v_max);
  bind.number("limits.a_max", cfg.limits.a_max);

  bind.integer("planner.horizon", cfg.horizon);
  bind.number("planner.budget_s", cfg.budget_s);
  bind.choice<ObjectiveMode>("planner.objective", cfg.objective_mode,
                             {{"info", ObjectiveMode::info},
                              {"classify", ObjectiveMode::classify},
                              {"time_varying", ObjectiveMode::time_varying}});
  bind.choice<RefineMode>("planner.optimizer", cfg.optimizer_mode,
                          {{"none", RefineMode::none},
                           {"local", RefineMode::local},
                           {"global", RefineMode::global}});
  bind.integer("planner.lattice_levels", cfg.lattice_levels);

  bind.integer("cmaes.lambda", cfg.cmaes.population_lambda);
  bind.number("cmaes.sigma0", cfg.cmaes.sigma0);
  bind.integer("cmaes.max_evals", cfg.cmaes.max_evals);
  bind.number("cmaes.f_tol", cfg.cmaes.f_tol);
  bind.number("cmaes.x_tol", cfg.cmaes.x_tol);

  bind.number("baseline.altitude_m", cfg.baseline.altitude_m);
  bind.number("baseline.overlap", cfg.baseline.overlap_frac);
  bind.choice<SweepDirection>("baseline.direction", cfg.baseline.direction,
                              {{"along_x", SweepDirection::along_x},
                               {"along_y", SweepDirection::along_y}});

  bind.integer("experiment.trials", cfg.trials);
  bind.seed("experiment.base_seed", cfg.base_seed);
  bind.number("experiment.bin_s", cfg.bin_s);

  bind.string("output.directory", cfg.output_dir);

  load.warnings = bind.unknown_key_warnings();
  cfg.validate();
  return load;
}

ConfigLoad load_config(const std::string& path) {
  try {
    return config_from_table(toml::parse_file(path));
  } catch (const toml::ParseError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(e.what());
  }
}

std::string effective_config_toml(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "name = \"" << cfg.name << "\"\n\n";
  out << "[map]\n";
  out << "width_m = " << format_double(cfg.width_m) << "\n";
  out << "height_m = " << format_double(cfg.height_m) << "\n";
  out << "resolution_m = " << format_double(cfg.resolution_m) << "\n";
  out << "weed_count = " << cfg.weed_count << "\n\n";
  out << "[sensor]\n";
  out << "half_angle_deg = " << format_double(cfg.half_angle_deg) << "\n";
  out << "accuracy_ceiling = " << format_double(cfg.accuracy_ceiling) << "\n";
  out << "accuracy_floor = " << format_double(cfg.accuracy_floor) << "\n";
  out << "h_min_m = " << format_double(cfg.h_min_m) << "\n";
  out << "h_max_m = " << format_double(cfg.h_max_m) << "\n\n";
  out << "[thresholds]\n";
  out << "delta_nw = " << format_double(cfg.thresholds.delta_nw) << "\n";
  out << "delta_w = " << format_double(cfg.thresholds.delta_w) << "\n\n";
  out << "[envelope]\n";
  out << "alt_min_m = " << format_double(cfg.alt_min_m) << "\n";
  out << "alt_max_m = " << format_double(cfg.alt_max_m) << "\n\n";
  out << "[limits]\n";
  out << "v_max = " << format_double(cfg.limits.v_max) << "\n";
  out << "a_max = " << format_double(cfg.limits.a_max) << "\n\n";
  out << "[planner]\n";
  out << "horizon = " << cfg.horizon << "\n";
  out << "budget_s = " << format_double(cfg.budget_s) << "\n";
  out << "objective = \"" << to_string(cfg.objective_mode) << "\"\n";
  out << "optimizer = \"" << to_string(cfg.optimizer_mode) << "\"\n";
  out << "lattice_levels = " << cfg.lattice_levels << "\n\n";
  out << "[cmaes]\n";
  out << "lambda = " << cfg.cmaes.population_lambda << "\n";
  out << "sigma0 = " << format_double(cfg.cmaes.sigma0) << "\n";
  out << "max_evals = " << cfg.cmaes.max_evals << "\n";
  out << "f_tol = " << format_double(cfg.cmaes.f_tol) << "\n";
  out << "x_tol = " << format_double(cfg.cmaes.x_tol) << "\n\n";
  out << "[baseline]\n";
  out << "altitude_m = " << format_double(cfg.baseline.altitude_m) << "\n";
  out << "overlap = " << format_double(cfg.baseline.overlap_frac) << "\n";
  out << "direction = \"" << to_string(cfg.baseline.direction) << "\"\n\n";
  out << "[experiment]\n";
  out << "trials = " << cfg.trials << "\n";
  out << "base_seed = " << cfg.base_seed << "\n";
  out << "bin_s = " << format_double(cfg.bin_s) << "\n\n";
  out << "[output]\n";
  out << "directory = \"" << cfg.output_dir << "\"\n";
  return out.str();
}

std::string config_digest(const ScenarioConfig& cfg) {
  const std::string canonical = effective_config_toml(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const char* to_string(ObjectiveMode mode) {
  switch (mode) {
    case ObjectiveMode::info: return "info";
    case ObjectiveMode::classify: return "classify";
    case ObjectiveMode::time_varying: return "time_varying";
  }
  return "?";
}

const char* to_string(RefineMode mode) {
  switch (mode) {
    case RefineMode::none: return "none";
    case RefineMode::local: return "local";
    case RefineMode::global: return "global";
  }
  return "?";
}

const char* to_string(SweepDirection direction) {
  return direction == SweepDirection::along_x ? "along_x" : "along_y";
}

}  // namespace ippsim
