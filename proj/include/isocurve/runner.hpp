#ifndef ISOCURVE_RUNNER_HPP
#define ISOCURVE_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isocurve/scene.hpp"
#include "isocurve/theorems.hpp"

namespace isocurve {

using OrderedJson = nlohmann::ordered_json;

/// Command-line overrides applied on top of scene task parameters.
struct RunOptions {
  std::string format = "json";  // json | csv
  std::optional<double> tol;
  std::optional<GridSpec> grid;
  std::optional<int> samples;
  std::optional<std::string> mode;  // paper | direct | both
  bool orientation_flip = false;
  bool paper_literal = false;
  std::optional<int> order;  // jet order for surface-report
  std::optional<std::string> surface, curve, pair, theorem;
  std::optional<double> a, b;
  std::optional<std::pair<double, double>> at;
  std::optional<Vec3> origin;
};

struct TaskResult {
  std::string name, command;
  bool pass = true;       // outcome of the asserted checks
  bool asserted = true;   // diagnostic-only tasks never gate the exit code
  std::string error;      // non-empty when the task aborted
  OrderedJson payload;
};

struct RunReport {
  std::string version;
  std::string scene_label, scene_hash;
  std::string command;
  std::vector<TaskResult> tasks;
  bool pass = true;
};

/// Executes a command against a scene. `command` may be one of the task
/// commands (runs the matching scene tasks, or a single task synthesized
/// from the options) or "run" (executes the scene's whole task list).
RunReport run(const SceneFile& scene, const std::string& command, const RunOptions& opts);

std::string serialize_json(const RunReport& report);
std::string serialize_csv(const RunReport& report);

}  // namespace isocurve

#endif  // ISOCURVE_RUNNER_HPP
