#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ippsim/metrics.hpp"
#include "ippsim/trajectory.hpp"

namespace ippsim {

// Fixed 6-decimal formatting used in every data file, so outputs are
// byte-identical across platforms and runs.
std::string format_fixed(double v);

// Writes to <path>.tmp in the same directory, then renames over the target.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// t_s,entropy_bits,classification_rate,f1
std::string trial_csv(const TrialRecord& record);

// t_s,mean,ci95_low,ci95_high
std::string aggregate_csv(const AggregateSeries& series);

// t_s,q_<level>... one column per quantile level
std::string cdf_csv(const CdfTable& table);

// t_s,x,y,z,vx,vy,vz,ax,ay,az
std::string samples_csv(const std::vector<TimedState>& states);

struct SvgSeries {
  std::string label;
  const AggregateSeries* series = nullptr;
  std::string color;  // CSS color for line and band
};

// Self-contained line plot with shaded 95% bands, fixed canvas, no
// timestamps or external references.
std::string series_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace ippsim
