#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace panoseg {

/// One LiDAR return: xyz in meters, intensity nominally in [0, 1].
/// Layout matches the 16-byte binary scan record (4x float32 LE on x86).
struct Point {
  float x = 0.f;
  float y = 0.f;
  float z = 0.f;
  float intensity = 0.f;
};
static_assert(sizeof(Point) == 16, "Point must stay a packed 4-float record");

struct PointCloud {
  std::vector<Point> points;
  /// Non-fatal parse notes (e.g. non-finite coordinates found on load).
  std::vector<std::string> warnings;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  Eigen::Vector3d position(std::size_t i) const {
    const Point& p = points[i];
    return {static_cast<double>(p.x), static_cast<double>(p.y),
            static_cast<double>(p.z)};
  }
};

/// Per-point class and instance labels. Instance 0 means "no instance".
struct SemanticMap {
  std::vector<std::uint16_t> semantic;
  std::vector<std::uint16_t> instance;

  std::size_t size() const { return semantic.size(); }
};

/// One row of the class table.
struct ClassSpec {
  std::uint16_t id = 0;
  std::string name;
  bool is_thing = false;
  /// Seed connectivity radius r_c in meters; required > 0 for thing classes.
  double min_radius = 0.0;
  /// Affinity above which two proposals of this class merge.
  double merge_threshold = 0.5;
  /// Gap cutoff of the geometric affinity scorer; <= 0 means "use min_radius".
  double gap_cutoff = 0.0;
};

/// Class table plus the shared pipeline geometry (voxel grid, iteration count).
struct ClassConfig {
  std::vector<ClassSpec> classes;
  /// Number of shrink iterations L.
  int shift_iterations = 4;
  Eigen::Vector3d voxel_size{0.2, 0.2, 0.1};
  Eigen::Vector3d extent_min{-48.0, -48.0, -3.0};
  Eigen::Vector3d extent_max{48.0, 48.0, 1.8};
  /// Candidate neighbours per proposal when scoring affinities.
  int knn_candidates = 5;

  const ClassSpec* find(std::uint16_t class_id) const;
  bool has_class(std::uint16_t class_id) const { return find(class_id) != nullptr; }
  bool is_thing(std::uint16_t class_id) const;
  /// r_c for a thing class; throws ConfigError for unknown/stuff classes.
  double min_radius(std::uint16_t class_id) const;
  double merge_threshold(std::uint16_t class_id) const;
  /// Effective g_max for a class (gap_cutoff if set, else min_radius).
  double gap_cutoff(std::uint16_t class_id) const;
  /// Largest r_c over all thing classes; 0 if there are none.
  double max_thing_radius() const;
  bool inside_extent(const Eigen::Vector3d& p) const;

  /// Checks the table invariants (positive radii, sane grid); throws
  /// ConfigError naming the first violated key.
  void check() const;
};

/// Ships the 19-class SemanticKITTI-style table with heuristic per-class
/// radii. The radii scale with typical object size and are tuning defaults,
/// not dataset-derived constants.
ClassConfig default_class_config();

/// Sparse seed points produced by balanced sampling.
struct SeedSet {
  /// Seed positions, one per non-empty voxel of thing points.
  std::vector<Eigen::Vector3d> positions;
  /// Majority class of the points dominated by each seed.
  std::vector<std::uint16_t> seed_class;
  /// Per raw point: index of its dominating seed, or -1 when the point does
  /// not participate (stuff class, unknown class, outside the extent).
  std::vector<std::int32_t> point_seed;

  std::size_t seed_count() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
};

struct Proposal {
  /// Dense 1-based instance ID.
  std::uint32_t id = 0;
  std::uint16_t class_id = 0;
  /// Member raw-point indices, ascending.
  std::vector<std::uint32_t> point_indices;
  Eigen::Vector3d centroid{0, 0, 0};
};

struct ProposalSet {
  /// Per raw point: proposal ID (1..O) or 0 for unassigned points.
  std::vector<std::uint32_t> instance_of_point;
  /// Proposals with IDs forming the contiguous range 1..O.
  std::vector<Proposal> proposals;

  std::size_t count() const { return proposals.size(); }
};

enum class IssueKind {
  kCountMismatch,
  kNonFiniteCoordinate,
  kInstanceOnStuff,
  kUnknownClass,
};

struct ValidationIssue {
  IssueKind kind;
  std::string message;
  /// Point index for per-point issues.
  std::optional<std::size_t> index;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::size_t count(IssueKind kind) const;
  /// True when the arrays disagree in length; downstream stages require
  /// matching lengths, everything else is a per-point data problem.
  bool has_count_mismatch() const { return count(IssueKind::kCountMismatch) > 0; }
};

/// Structural validation of a scan/label pair against the class table.
/// Pure: never mutates inputs, always returns a (possibly empty) report.
ValidationReport validate_scan(const PointCloud& cloud, const SemanticMap& labels,
                               const ClassConfig& cfg);

}  // namespace panoseg
