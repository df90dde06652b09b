#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ippsim/rng.hpp"

namespace ippsim {

// Log-odds of probability p, natural base.
double logit(double p);

// Inverse of logit.
double sigmoid(double log_odds);

// Shannon entropy of a Bernoulli cell in bits; 0*log2(0) := 0.
double cell_entropy(double p);

// Default symmetric log-odds clamp, logit(0.999).
inline constexpr double kDefaultClampProbability = 0.999;

struct CellIndex {
  int x = 0;
  int y = 0;

  bool operator==(const CellIndex&) const = default;
};

// Axis-aligned cell lattice over a rectangular field. Cell (0,0) has its
// low corner at `origin`; cells are square with side `resolution_m`.
class GridGeometry {
 public:
  GridGeometry(double width_m, double height_m, double resolution_m,
               const Eigen::Vector2d& origin = Eigen::Vector2d::Zero());

  double width_m() const { return width_m_; }
  double height_m() const { return height_m_; }
  double resolution_m() const { return resolution_m_; }
  const Eigen::Vector2d& origin() const { return origin_; }

  int cells_x() const { return cells_x_; }
  int cells_y() const { return cells_y_; }
  int cell_count() const { return cells_x_ * cells_y_; }

  bool in_bounds(CellIndex cell) const {
    return cell.x >= 0 && cell.x < cells_x_ && cell.y >= 0 && cell.y < cells_y_;
  }
  int flat_index(CellIndex cell) const { return cell.y * cells_x_ + cell.x; }
  CellIndex from_flat(int i) const { return {i % cells_x_, i / cells_x_}; }

  Eigen::Vector2d cell_center(CellIndex cell) const {
    return origin_ + resolution_m_ * Eigen::Vector2d(cell.x + 0.5, cell.y + 0.5);
  }

  double min_x() const { return origin_.x(); }
  double max_x() const { return origin_.x() + width_m_; }
  double min_y() const { return origin_.y(); }
  double max_y() const { return origin_.y() + height_m_; }

  bool operator==(const GridGeometry& other) const {
    return cells_x_ == other.cells_x_ && cells_y_ == other.cells_y_ &&
           resolution_m_ == other.resolution_m_ && origin_ == other.origin_;
  }

 private:
  double width_m_;
  double height_m_;
  double resolution_m_;
  Eigen::Vector2d origin_;
  int cells_x_;
  int cells_y_;
};

struct ClassificationThresholds {
  double delta_nw = 0.25;
  double delta_w = 0.75;

  // Strict on both sides: cells at exactly a threshold count as classified.
  bool is_unclassified(double p) const { return p > delta_nw && p < delta_w; }

  // Throws std::invalid_argument when the ordering or range constraints fail.
  void validate() const;
};

// Bernoulli weed-occupancy beliefs stored as clamped log-odds.
class OccupancyGrid {
 public:
  explicit OccupancyGrid(const GridGeometry& geometry, double prior = 0.5,
                         double clamp_probability = kDefaultClampProbability);

  const GridGeometry& geometry() const { return geometry_; }
  double log_odds_clamp() const { return clamp_; }

  double log_odds(CellIndex cell) const { return log_odds_[geometry_.flat_index(cell)]; }
  double log_odds_flat(int i) const { return log_odds_[i]; }
  double probability(CellIndex cell) const { return sigmoid(log_odds(cell)); }
  double probability_flat(int i) const { return sigmoid(log_odds_[i]); }

  // Additive log-odds update with a single observation, clamped to
  // [-clamp, +clamp]. Throws std::out_of_range for cells outside the grid
  // and std::invalid_argument for p_obs outside (0, 1).
  void fuse(CellIndex cell, double p_obs);

  std::size_t unclassified_count(const ClassificationThresholds& thr) const;
  std::vector<CellIndex> unclassified_set(const ClassificationThresholds& thr) const;

 private:
  GridGeometry geometry_;
  double clamp_;
  std::vector<double> log_odds_;
};

// Sum of per-cell Bernoulli entropies, in bits.
double map_entropy(const OccupancyGrid& grid);

// Latent weed field the sensor observes.
class GroundTruthMap {
 public:
  GroundTruthMap(const GridGeometry& geometry, std::vector<std::uint8_t> occupied);

  const GridGeometry& geometry() const { return geometry_; }
  bool occupied(CellIndex cell) const {
    return occupied_[geometry_.flat_index(cell)] != 0;
  }
  bool occupied_flat(int i) const { return occupied_[i] != 0; }
  int occupied_count() const;

 private:
  GridGeometry geometry_;
  std::vector<std::uint8_t> occupied_;
};

// Fixed-count homogeneous spatial Poisson draw: `weed_count` distinct cells,
// uniform without replacement, deterministic for a fixed seed.
GroundTruthMap generate_ground_truth(const GridGeometry& geometry, int weed_count,
                                     std::uint64_t rng_seed);

// Row-major probabilities, 6 decimal places, one row per grid row.
void write_probability_csv(const OccupancyGrid& grid, std::ostream& out);

// ASCII PGM, p=0 black to p=1 white, row 0 at the top.
void write_probability_pgm(const OccupancyGrid& grid, std::ostream& out);

}  // namespace ippsim
