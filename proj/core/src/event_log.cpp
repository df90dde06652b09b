#include "ippsim/event_log.hpp"

#include <json.hpp>

namespace ippsim {
namespace {

using nlohmann::json;

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

const char* objective_name(ObjectiveKind kind) {
  return kind == ObjectiveKind::info ? "info" : "classify";
}

}  // namespace

void JsonlObserver::on_selection(const SelectionEvent& ev) {
  json j{{"type", "selection"},
         {"replan", ev.replan_index},
         {"step", ev.step},
         {"objective", objective_name(ev.objective)},
         {"from", vec3(ev.from)},
         {"chosen", vec3(ev.chosen.position)},
         {"lattice_index", ev.lattice_index},
         {"gain", ev.gain},
         {"rate", ev.rate},
         {"fallback", ev.fallback}};
  out_ << j.dump() << '\n';
}

void JsonlObserver::on_refine(const RefineEvent& ev) {
  json j{{"type", "refine"},
         {"replan", ev.replan_index},
         {"mode", ev.mode},
         {"dimension", ev.dimension},
         {"f_initial", ev.f_initial},
         {"f_best", ev.f_best},
         {"evals", ev.eval_count},
         {"generations", ev.generations}};
  out_ << j.dump() << '\n';
}

void JsonlObserver::on_generation(const GenerationEvent& ev) {
  if (!log_generations_) return;
  json j{{"type", "generation"},
         {"replan", ev.replan_index},
         {"generation", ev.generation},
         {"f_best", ev.f_best},
         {"sigma", ev.sigma}};
  out_ << j.dump() << '\n';
}

void JsonlObserver::on_replan(const ReplanEvent& ev) {
  json viewpoints = json::array();
  json objectives = json::array();
  if (ev.viewpoints)
    for (const Viewpoint& vp : *ev.viewpoints) {
      viewpoints.push_back(vec3(vp.position));
    }
  if (ev.objectives)
    for (ObjectiveKind kind : *ev.objectives) objectives.push_back(objective_name(kind));
  json j{{"type", "replan"},
         {"replan", ev.replan_index},
         {"elapsed_s", ev.elapsed_s},
         {"viewpoints", viewpoints},
         {"objectives", objectives}};
  out_ << j.dump() << '\n';
}

void JsonlObserver::on_measurement(const MeasurementEvent& ev) {
  json j{{"type", "measurement"},
         {"t_s", ev.t_s},
         {"position", vec3(ev.position)},
         {"cells", ev.cells_fused},
         {"entropy_bits", ev.entropy_bits},
         {"classification_rate", ev.classification_rate},
         {"f1", ev.f1}};
  out_ << j.dump() << '\n';
}

void JsonlObserver::on_path(const PathEvent& ev) {
  json j{{"type", "path"},
         {"replan", ev.replan_index},
         {"t0_s", ev.t0_s},
         {"legs_executed", ev.legs_executed},
         {"total_time_s", ev.path ? ev.path->total_time() : 0.0}};
  out_ << j.dump() << '\n';
}

}  // namespace ippsim
