#include "ippsim/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ippsim {

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string trial_csv(const TrialRecord& record) {
  std::ostringstream out;
  out << "t_s,entropy_bits,classification_rate,f1\n";
  for (const MeasurementRow& row : record.events)
    out << format_fixed(row.t_s) << ',' << format_fixed(row.entropy_bits) << ','
        << format_fixed(row.classification_rate) << ',' << format_fixed(row.f1) << '\n';
  return out.str();
}

std::string aggregate_csv(const AggregateSeries& series) {
  std::ostringstream out;
  out << "t_s,mean,ci95_low,ci95_high\n";
  for (std::size_t i = 0; i < series.time_bins.size(); ++i)
    out << format_fixed(series.time_bins[i]) << ',' << format_fixed(series.mean[i]) << ','
        << format_fixed(series.ci95_low[i]) << ',' << format_fixed(series.ci95_high[i])
        << '\n';
  return out.str();
}

std::string cdf_csv(const CdfTable& table) {
  std::ostringstream out;
  out << "t_s";
  for (double q : table.quantiles) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), ",q%.3f", q);
    out << buf;
  }
  out << '\n';
  for (std::size_t i = 0; i < table.time_bins.size(); ++i) {
    out << format_fixed(table.time_bins[i]);
    for (double v : table.values[i]) out << ',' << format_fixed(v);
    out << '\n';
  }
  return out.str();
}

std::string samples_csv(const std::vector<TimedState>& states) {
  std::ostringstream out;
  out << "t_s,x,y,z,vx,vy,vz,ax,ay,az\n";
  for (const TimedState& s : states) {
    out << format_fixed(s.t);
    for (int i = 0; i < 3; ++i) out << ',' << format_fixed(s.position(i));
    for (int i = 0; i < 3; ++i) out << ',' << format_fixed(s.velocity(i));
    for (int i = 0; i < 3; ++i) out << ',' << format_fixed(s.acceleration(i));
    out << '\n';
  }
  return out.str();
}

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 42.0;
constexpr double kMarginBottom = 54.0;

std::string format_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string series_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<SvgSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const SvgSeries& s : series) {
    if (!s.series || s.series->time_bins.empty()) continue;
    x_min = std::min(x_min, s.series->time_bins.front());
    x_max = std::max(x_max, s.series->time_bins.back());
    for (std::size_t i = 0; i < s.series->time_bins.size(); ++i) {
      y_min = std::min(y_min, s.series->ci95_low[i]);
      y_max = std::max(y_max, s.series->ci95_high[i]);
    }
  }
  if (!std::isfinite(x_min) || !std::isfinite(y_min))
    throw std::invalid_argument("plot needs at least one non-empty series");
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double v) {
    return kMarginLeft + plot_w * (v - x_min) / (x_max - x_min);
  };
  const auto sy = [&](double v) {
    return kMarginTop + plot_h * (1.0 - (v - y_min) / (y_max - y_min));
  };
  const auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title) << "</text>\n";

  // Gridlines and ticks, 6 divisions per axis.
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
  for (int i = 0; i <= 6; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 6.0;
    const double px = sx(fx);
    svg << "<line x1=\"" << coord(px) << "\" y1=\"" << coord(kMarginTop) << "\" x2=\""
        << coord(px) << "\" y2=\"" << coord(kMarginTop + plot_h)
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << coord(px) << "\" y=\"" << coord(kMarginTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << format_tick(fx) << "</text>\n";
    const double fy = y_min + (y_max - y_min) * i / 6.0;
    const double py = sy(fy);
    svg << "<line x1=\"" << coord(kMarginLeft) << "\" y1=\"" << coord(py) << "\" x2=\""
        << coord(kMarginLeft + plot_w) << "\" y2=\"" << coord(py)
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << coord(kMarginLeft - 8) << "\" y=\"" << coord(py + 4)
        << "\" text-anchor=\"end\">" << format_tick(fy) << "</text>\n";
  }
  svg << "</g>\n";

  for (const SvgSeries& s : series) {
    if (!s.series || s.series->time_bins.empty()) continue;
    const AggregateSeries& a = *s.series;
    svg << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < a.time_bins.size(); ++i)
      svg << coord(sx(a.time_bins[i])) << ',' << coord(sy(a.ci95_high[i])) << ' ';
    for (std::size_t i = a.time_bins.size(); i-- > 0;)
      svg << coord(sx(a.time_bins[i])) << ',' << coord(sy(a.ci95_low[i])) << ' ';
    svg << "\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < a.time_bins.size(); ++i)
      svg << coord(sx(a.time_bins[i])) << ',' << coord(sy(a.mean[i])) << ' ';
    svg << "\"/>\n";
  }

  // Legend, top-right inside the plot area.
  double ly = kMarginTop + 14.0;
  for (const SvgSeries& s : series) {
    if (!s.series) continue;
    const double lx = kMarginLeft + plot_w - 150.0;
    svg << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly - 4) << "\" x2=\""
        << coord(lx + 26) << "\" y2=\"" << coord(ly - 4) << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << coord(lx + 32) << "\" y=\"" << coord(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label)
        << "</text>\n";
    ly += 18.0;
  }

  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape_xml(x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << kHeight / 2 << ")\">" << escape_xml(y_label)
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ippsim
