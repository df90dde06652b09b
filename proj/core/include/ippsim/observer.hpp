#pragma once

#include <Eigen/Core>
#include <vector>

#include "ippsim/grid.hpp"
#include "ippsim/objective.hpp"
#include "ippsim/trajectory.hpp"

namespace ippsim {

// Pointers reference planner-owned state that is only valid during the
// callback; observers that keep data must copy it.
struct SelectionEvent {
  int replan_index = 0;
  int step = 0;  // selection index within one replan
  ObjectiveKind objective = ObjectiveKind::info;
  Eigen::Vector3d from = Eigen::Vector3d::Zero();
  Viewpoint chosen;
  int lattice_index = -1;
  double gain = 0.0;
  double rate = 0.0;
  bool fallback = false;
  const OccupancyGrid* belief = nullptr;   // planning belief before fusing this step
  const std::vector<int>* visited = nullptr;
};

struct RefineEvent {
  int replan_index = 0;
  int mode = 0;  // RefineMode as int to avoid a header cycle
  int dimension = 0;
  double f_initial = 0.0;
  double f_best = 0.0;
  int eval_count = 0;
  int generations = 0;
};

struct GenerationEvent {
  int replan_index = 0;
  int generation = 0;
  double f_best = 0.0;
  double sigma = 0.0;
};

struct ReplanEvent {
  int replan_index = 0;
  double elapsed_s = 0.0;
  const std::vector<Viewpoint>* viewpoints = nullptr;
  const std::vector<ObjectiveKind>* objectives = nullptr;
};

struct MeasurementEvent {
  double t_s = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  int cells_fused = 0;
  double entropy_bits = 0.0;
  double classification_rate = 0.0;
  double f1 = 0.0;
};

struct PathEvent {
  int replan_index = 0;
  double t0_s = 0.0;              // mission time at the path's start
  int legs_executed = 0;          // how many segments fit the budget
  const PolynomialPath* path = nullptr;
};

class MissionObserver {
 public:
  virtual ~MissionObserver() = default;
  virtual void on_selection(const SelectionEvent&) {}
  virtual void on_refine(const RefineEvent&) {}
  virtual void on_generation(const GenerationEvent&) {}
  virtual void on_replan(const ReplanEvent&) {}
  virtual void on_measurement(const MeasurementEvent&) {}
  virtual void on_path(const PathEvent&) {}
};

}  // namespace ippsim
