#include "ippsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ippsim {

namespace {

constexpr double kInvLn2 = 1.4426950408889634073599246810019;

int checked_cell_count(double extent_m, double resolution_m, const char* axis) {
  const double ratio = extent_m / resolution_m;
  const int cells = static_cast<int>(std::lround(ratio));
  if (cells < 1 || std::abs(cells * resolution_m - extent_m) > 1e-9 * std::max(1.0, extent_m)) {
    throw std::invalid_argument(std::string("grid ") + axis +
                                " extent is not a positive multiple of the resolution");
  }
  return cells;
}

}  // namespace

double logit(double p) { return std::log(p / (1.0 - p)); }

double sigmoid(double log_odds) { return 1.0 / (1.0 + std::exp(-log_odds)); }

double cell_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p)) * kInvLn2;
}

GridGeometry::GridGeometry(double width_m, double height_m, double resolution_m,
                           const Eigen::Vector2d& origin)
    : width_m_(width_m), height_m_(height_m), resolution_m_(resolution_m), origin_(origin) {
  if (!(resolution_m > 0.0)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  cells_x_ = checked_cell_count(width_m, resolution_m, "x");
  cells_y_ = checked_cell_count(height_m, resolution_m, "y");
}

void ClassificationThresholds::validate() const {
  if (!(delta_nw > 0.0 && delta_nw <= 0.5)) {
    throw std::invalid_argument("delta_nw must lie in (0, 0.5]");
  }
  if (!(delta_w >= 0.5 && delta_w < 1.0)) {
    throw std::invalid_argument("delta_w must lie in [0.5, 1)");
  }
  if (!(delta_nw < delta_w)) {
    throw std::invalid_argument("delta_nw must be strictly below delta_w");
  }
}

OccupancyGrid::OccupancyGrid(const GridGeometry& geometry, double prior,
                             double clamp_probability)
    : geometry_(geometry) {
  if (!(prior > 0.0 && prior < 1.0)) {
    throw std::invalid_argument("prior probability must lie in (0, 1)");
  }
  if (!(clamp_probability > 0.5 && clamp_probability < 1.0)) {
    throw std::invalid_argument("clamp probability must lie in (0.5, 1)");
  }
  clamp_ = logit(clamp_probability);
  log_odds_.assign(static_cast<std::size_t>(geometry_.cell_count()), logit(prior));
}

void OccupancyGrid::fuse(CellIndex cell, double p_obs) {
  if (!geometry_.in_bounds(cell)) {
    throw std::out_of_range("fuse: cell index outside the grid");
  }
  if (!(p_obs > 0.0 && p_obs < 1.0)) {
    throw std::invalid_argument("fuse: observation probability must lie strictly in (0, 1)");
  }
  double& lo = log_odds_[geometry_.flat_index(cell)];
  lo = std::clamp(lo + logit(p_obs), -clamp_, clamp_);
}

std::size_t OccupancyGrid::unclassified_count(const ClassificationThresholds& thr) const {
  std::size_t n = 0;
  for (const double lo : log_odds_) {
    if (thr.is_unclassified(sigmoid(lo))) ++n;
  }
  return n;
}

std::vector<CellIndex> OccupancyGrid::unclassified_set(
    const ClassificationThresholds& thr) const {
  std::vector<CellIndex> cells;
  for (int i = 0; i < geometry_.cell_count(); ++i) {
    if (thr.is_unclassified(sigmoid(log_odds_[i]))) {
      cells.push_back(geometry_.from_flat(i));
    }
  }
  return cells;
}

double map_entropy(const OccupancyGrid& grid) {
  double bits = 0.0;
  for (int i = 0; i < grid.geometry().cell_count(); ++i) {
    bits += cell_entropy(grid.probability_flat(i));
  }
  return bits;
}

GroundTruthMap::GroundTruthMap(const GridGeometry& geometry,
                               std::vector<std::uint8_t> occupied)
    : geometry_(geometry), occupied_(std::move(occupied)) {
  if (occupied_.size() != static_cast<std::size_t>(geometry_.cell_count())) {
    throw std::invalid_argument("ground truth size does not match geometry");
  }
}

int GroundTruthMap::occupied_count() const {
  return static_cast<int>(std::count(occupied_.begin(), occupied_.end(), std::uint8_t{1}));
}

GroundTruthMap generate_ground_truth(const GridGeometry& geometry, int weed_count,
                                     std::uint64_t rng_seed) {
  const int n = geometry.cell_count();
  if (weed_count < 0 || weed_count > n) {
    throw std::invalid_argument("weed count must lie in [0, cell count]");
  }
  std::vector<int> cells(static_cast<std::size_t>(n));
  std::iota(cells.begin(), cells.end(), 0);
  Rng rng(rng_seed);
  // Partial Fisher-Yates: the first weed_count entries are a uniform draw
  // without replacement.
  for (int i = 0; i < weed_count; ++i) {
    const int j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
    std::swap(cells[i], cells[j]);
  }
  std::vector<std::uint8_t> occupied(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < weed_count; ++i) occupied[cells[i]] = 1;
  return GroundTruthMap(geometry, std::move(occupied));
}

void write_probability_csv(const OccupancyGrid& grid, std::ostream& out) {
  char buf[32];
  for (int y = 0; y < grid.geometry().cells_y(); ++y) {
    for (int x = 0; x < grid.geometry().cells_x(); ++x) {
      std::snprintf(buf, sizeof(buf), "%.6f", grid.probability({x, y}));
      if (x > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_probability_pgm(const OccupancyGrid& grid, std::ostream& out) {
  const auto& geom = grid.geometry();
  out << "P2\n" << geom.cells_x() << ' ' << geom.cells_y() << "\n255\n";
  for (int y = 0; y < geom.cells_y(); ++y) {
    for (int x = 0; x < geom.cells_x(); ++x) {
      const int level = static_cast<int>(std::lround(grid.probability({x, y}) * 255.0));
      if (x > 0) out << ' ';
      out << level;
    }
    out << '\n';
  }
}

}  // namespace ippsim
