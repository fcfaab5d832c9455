#ifndef ISOCURVE_SCENE_HPP
#define ISOCURVE_SCENE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "isocurve/isometry.hpp"

namespace isocurve {

struct SceneTask {
  std::string name;
  std::string command;
  std::map<std::string, std::string> params;
  int line = 0;
};

/// Parsed scene: named surfaces, curves and pairs plus an optional task
/// list. All cross-references are resolved at load time; objects are built
/// eagerly so a loaded scene is ready to run.
class SceneFile {
 public:
  const std::vector<std::string>& surface_names() const noexcept { return surface_names_; }
  const std::vector<std::string>& curve_names() const noexcept { return curve_names_; }
  const std::vector<std::string>& pair_names() const noexcept { return pair_names_; }
  const std::vector<SceneTask>& tasks() const noexcept { return tasks_; }

  SurfaceChartPtr surface(const std::string& name) const;
  std::shared_ptr<const CurveOnSurface> curve(const std::string& name) const;
  std::shared_ptr<const SurfacePair> pair(const std::string& name) const;

  const std::string& label() const noexcept { return label_; }
  const std::string& hash() const noexcept { return hash_; }

  friend SceneFile parse_scene(const std::string& text, const std::string& label);

 private:
  std::vector<std::string> surface_names_, curve_names_, pair_names_;
  std::map<std::string, SurfaceChartPtr> surfaces_;
  std::map<std::string, std::shared_ptr<const CurveOnSurface>> curves_;
  std::map<std::string, std::shared_ptr<const SurfacePair>> pairs_;
  std::vector<SceneTask> tasks_;
  std::string label_, hash_;
};

/// Parses scene text (see docs/scene_format.md for the grammar).
SceneFile parse_scene(const std::string& text, const std::string& label = "<memory>");

/// Reads and parses a scene file.
SceneFile load_scene(const std::string& path);

}  // namespace isocurve

#endif  // ISOCURVE_SCENE_HPP
