#include "panoseg/types.hpp"

#include <algorithm>
#include <cmath>

#include "panoseg/errors.hpp"

namespace panoseg {

const ClassSpec* ClassConfig::find(std::uint16_t class_id) const {
  for (const ClassSpec& c : classes) {
    if (c.id == class_id) return &c;
  }
  return nullptr;
}

bool ClassConfig::is_thing(std::uint16_t class_id) const {
  const ClassSpec* c = find(class_id);
  return c != nullptr && c->is_thing;
}

double ClassConfig::min_radius(std::uint16_t class_id) const {
  const ClassSpec* c = find(class_id);
  if (c == nullptr || !c->is_thing) {
    throw ConfigError("min_radius requested for non-thing class " +
                      std::to_string(class_id));
  }
  return c->min_radius;
}

double ClassConfig::merge_threshold(std::uint16_t class_id) const {
  const ClassSpec* c = find(class_id);
  if (c == nullptr) {
    throw ConfigError("merge_threshold requested for unknown class " +
                      std::to_string(class_id));
  }
  return c->merge_threshold;
}

double ClassConfig::gap_cutoff(std::uint16_t class_id) const {
  const ClassSpec* c = find(class_id);
  if (c == nullptr) {
    throw ConfigError("gap_cutoff requested for unknown class " +
                      std::to_string(class_id));
  }
  return c->gap_cutoff > 0.0 ? c->gap_cutoff : c->min_radius;
}

double ClassConfig::max_thing_radius() const {
  double r = 0.0;
  for (const ClassSpec& c : classes) {
    if (c.is_thing) r = std::max(r, c.min_radius);
  }
  return r;
}

bool ClassConfig::inside_extent(const Eigen::Vector3d& p) const {
  for (int a = 0; a < 3; ++a) {
    if (p[a] < extent_min[a] || p[a] >= extent_max[a]) return false;
  }
  return true;
}

void ClassConfig::check() const {
  if (classes.empty()) throw ConfigError("classes: table must not be empty");
  for (const ClassSpec& c : classes) {
    if (c.is_thing && !(c.min_radius > 0.0)) {
      throw ConfigError("classes[" + std::to_string(c.id) +
                        "].r_c: thing class requires a positive radius");
    }
  }
  for (int a = 0; a < 3; ++a) {
    if (!(voxel_size[a] > 0.0)) {
      throw ConfigError("voxel_size: components must be positive");
    }
    if (!(extent_min[a] < extent_max[a])) {
      throw ConfigError("extent: min must be strictly below max on every axis");
    }
  }
  if (shift_iterations < 1) throw ConfigError("L: must be >= 1");
  if (knn_candidates < 1) throw ConfigError("knn: must be >= 1");
}

ClassConfig default_class_config() {
  ClassConfig cfg;
  // Radii scale with object footprint: person-sized things get tight radii,
  // truck/bus-sized things get wide ones.
  cfg.classes = {
      {1, "car", true, 1.2, 0.5, 0.0},
      {2, "bicycle", true, 0.8, 0.5, 0.0},
      {3, "motorcycle", true, 0.8, 0.5, 0.0},
      {4, "truck", true, 2.4, 0.5, 0.0},
      {5, "other-vehicle", true, 2.0, 0.5, 0.0},
      {6, "person", true, 0.6, 0.5, 0.0},
      {7, "bicyclist", true, 0.8, 0.5, 0.0},
      {8, "motorcyclist", true, 0.8, 0.5, 0.0},
      {9, "road", false, 0.0, 0.5, 0.0},
      {10, "parking", false, 0.0, 0.5, 0.0},
      {11, "sidewalk", false, 0.0, 0.5, 0.0},
      {12, "other-ground", false, 0.0, 0.5, 0.0},
      {13, "building", false, 0.0, 0.5, 0.0},
      {14, "fence", false, 0.0, 0.5, 0.0},
      {15, "vegetation", false, 0.0, 0.5, 0.0},
      {16, "trunk", false, 0.0, 0.5, 0.0},
      {17, "terrain", false, 0.0, 0.5, 0.0},
      {18, "pole", false, 0.0, 0.5, 0.0},
      {19, "traffic-sign", false, 0.0, 0.5, 0.0},
  };
  return cfg;
}

std::size_t ValidationReport::count(IssueKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(),
                    [kind](const ValidationIssue& i) { return i.kind == kind; }));
}

ValidationReport validate_scan(const PointCloud& cloud, const SemanticMap& labels,
                               const ClassConfig& cfg) {
  ValidationReport report;
  const std::size_t n = cloud.size();

  if (labels.semantic.size() != n) {
    report.issues.push_back(
        {IssueKind::kCountMismatch,
         "semantic array has " + std::to_string(labels.semantic.size()) +
             " entries for a cloud of " + std::to_string(n),
         std::nullopt});
  }
  if (labels.instance.size() != n) {
    report.issues.push_back(
        {IssueKind::kCountMismatch,
         "instance array has " + std::to_string(labels.instance.size()) +
             " entries for a cloud of " + std::to_string(n),
         std::nullopt});
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = cloud.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      report.issues.push_back({IssueKind::kNonFiniteCoordinate,
                               "point " + std::to_string(i) +
                                   " has a non-finite coordinate",
                               i});
    }
  }

  // Per-point label checks only make sense when the lengths agree.
  const std::size_t checked =
      std::min({n, labels.semantic.size(), labels.instance.size()});
  for (std::size_t i = 0; i < checked; ++i) {
    const std::uint16_t cls = labels.semantic[i];
    const ClassSpec* spec = cfg.find(cls);
    if (spec == nullptr && cls != 0) {
      report.issues.push_back({IssueKind::kUnknownClass,
                               "point " + std::to_string(i) + " has class " +
                                   std::to_string(cls) +
                                   " absent from the class table",
                               i});
      continue;
    }
    if (labels.instance[i] != 0 && (spec == nullptr || !spec->is_thing)) {
      report.issues.push_back(
          {IssueKind::kInstanceOnStuff,
           "point " + std::to_string(i) + " carries instance " +
               std::to_string(labels.instance[i]) + " on non-thing class " +
               std::to_string(cls),
           i});
    }
  }
  return report;
}

}  // namespace panoseg
