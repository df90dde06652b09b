#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ippsim/event_log.hpp"
#include "ippsim/io.hpp"

using namespace ippsim;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

AggregateSeries small_series() {
  AggregateSeries s;
  s.time_bins = {0.0, 1.0, 2.0};
  s.mean = {2.0, 3.0, 2.5};
  s.ci95_low = {1.5, 2.5, 2.0};
  s.ci95_high = {2.5, 3.5, 3.0};
  s.n_trials = 4;
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("fixed formatting is six decimals always") {
  CHECK(format_fixed(0.5) == "0.500000");
  CHECK(format_fixed(2500.0) == "2500.000000");
  CHECK(format_fixed(-1.25) == "-1.250000");
  CHECK(format_fixed(1e-7) == "0.000000");
  CHECK(format_fixed(0.0000015) == "0.000002");
}

TEST_CASE("atomic writes land whole and leave no temp file") {
  const fs::path dir = fs::temp_directory_path() / "ippsim_io_test";
  const fs::path target = dir / "nested" / "data.csv";
  fs::remove_all(dir);

  atomic_write_file(target, "first\n");
  CHECK(read_file(target) == "first\n");
  CHECK(!fs::exists(target.string() + ".tmp"));

  atomic_write_file(target, "second\n");  // overwrites in place
  CHECK(read_file(target) == "second\n");

  fs::remove_all(dir);
}

TEST_CASE("trial csv bytes") {
  TrialRecord rec;
  rec.events = {{0.0, 2500.0, 0.0, 0.0}, {10.5, 1200.25, 0.5, 0.75}};
  CHECK(trial_csv(rec) ==
        "t_s,entropy_bits,classification_rate,f1\n"
        "0.000000,2500.000000,0.000000,0.000000\n"
        "10.500000,1200.250000,0.500000,0.750000\n");
}

TEST_CASE("aggregate csv bytes") {
  AggregateSeries s;
  s.time_bins = {0.0, 1.0};
  s.mean = {2.0, 3.0};
  s.ci95_low = {1.5, 2.5};
  s.ci95_high = {2.5, 3.5};
  CHECK(aggregate_csv(s) ==
        "t_s,mean,ci95_low,ci95_high\n"
        "0.000000,2.000000,1.500000,2.500000\n"
        "1.000000,3.000000,2.500000,3.500000\n");
}

TEST_CASE("cdf csv names one column per quantile level") {
  CdfTable table;
  table.time_bins = {0.0};
  table.quantiles = {0.025, 0.5, 0.975};
  table.values = {{10.0, 20.0, 30.0}};
  CHECK(cdf_csv(table) ==
        "t_s,q0.025,q0.500,q0.975\n"
        "0.000000,10.000000,20.000000,30.000000\n");
}

TEST_CASE("samples csv carries the full state") {
  TimedState s;
  s.t = 1.5;
  s.position = {1.0, 2.0, 3.0};
  s.velocity = {0.1, 0.2, 0.3};
  s.acceleration = {-0.1, 0.0, 0.25};
  CHECK(samples_csv({s}) ==
        "t_s,x,y,z,vx,vy,vz,ax,ay,az\n"
        "1.500000,1.000000,2.000000,3.000000,"
        "0.100000,0.200000,0.300000,"
        "-0.100000,0.000000,0.250000\n");
}

TEST_CASE("plots are self-contained deterministic svg") {
  const AggregateSeries a = small_series();
  AggregateSeries b = small_series();
  for (double& m : b.mean) m += 1.0;

  const std::vector<SvgSeries> series = {{"adaptive", &a, "#1f77b4"},
                                         {"lawnmower", &b, "#d62728"}};
  const std::string svg = series_svg("entropy <bits>", "time [s]", "bits", series);

  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);     // confidence band
  CHECK(svg.find("entropy &lt;bits&gt;") != std::string::npos);
  CHECK(svg.find("adaptive") != std::string::npos);
  CHECK(svg.find("lawnmower") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);         // no external references

  CHECK(series_svg("entropy <bits>", "time [s]", "bits", series) == svg);

  CHECK_THROWS_AS(series_svg("t", "x", "y", {}), std::invalid_argument);
  AggregateSeries empty;
  CHECK_THROWS_AS(series_svg("t", "x", "y", {{"e", &empty, "#000"}}),
                  std::invalid_argument);
}

TEST_CASE("the jsonl observer emits one parseable object per event") {
  std::ostringstream out;
  JsonlObserver obs(out);

  MeasurementEvent m;
  m.t_s = 3.5;
  m.position = {1.0, 2.0, 10.0};
  m.cells_fused = 12;
  m.entropy_bits = 2400.0;
  obs.on_measurement(m);

  SelectionEvent sel;
  sel.replan_index = 2;
  sel.step = 1;
  sel.objective = ObjectiveKind::classify;
  sel.chosen.position = {5.0, 6.0, 11.25};
  sel.lattice_index = 9;
  sel.gain = 4.5;
  sel.rate = 0.9;
  obs.on_selection(sel);

  GenerationEvent gen;
  obs.on_generation(gen);  // suppressed by default

  RefineEvent ref;
  ref.mode = 1;
  ref.dimension = 9;
  ref.f_initial = -2.0;
  ref.f_best = -2.5;
  obs.on_refine(ref);

  std::istringstream lines(out.str());
  std::string line;
  std::vector<nlohmann::json> parsed;
  while (std::getline(lines, line)) parsed.push_back(nlohmann::json::parse(line));

  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0]["type"] == "measurement");
  CHECK(parsed[0]["t_s"] == 3.5);
  CHECK(parsed[0]["cells"] == 12);
  CHECK(parsed[0]["position"][2] == 10.0);
  CHECK(parsed[1]["type"] == "selection");
  CHECK(parsed[1]["objective"] == "classify");
  CHECK(parsed[1]["chosen"][0] == 5.0);
  CHECK(parsed[1]["fallback"] == false);
  CHECK(parsed[2]["type"] == "refine");
  CHECK(parsed[2]["f_best"] == -2.5);

  SUBCASE("generation events appear when enabled") {
    std::ostringstream verbose;
    JsonlObserver loud(verbose, true);
    loud.on_generation(gen);
    const auto j = nlohmann::json::parse(verbose.str());
    CHECK(j["type"] == "generation");
  }
}

TEST_SUITE_END();
