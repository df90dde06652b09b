#pragma once

#include <ostream>

#include "ippsim/observer.hpp"

namespace ippsim {

// Streams every planner and execution event as one JSON object per line.
// Scalar payloads only; the belief snapshots offered by SelectionEvent are
// not serialized.
class JsonlObserver : public MissionObserver {
 public:
  explicit JsonlObserver(std::ostream& out, bool log_generations = false)
      : out_(out), log_generations_(log_generations) {}

  void on_selection(const SelectionEvent& ev) override;
  void on_refine(const RefineEvent& ev) override;
  void on_generation(const GenerationEvent& ev) override;
  void on_replan(const ReplanEvent& ev) override;
  void on_measurement(const MeasurementEvent& ev) override;
  void on_path(const PathEvent& ev) override;

 private:
  std::ostream& out_;
  bool log_generations_;
};

}  // namespace ippsim
