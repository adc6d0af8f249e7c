#pragma once

#include "panoseg/types.hpp"

namespace panoseg::sip {

/// Fixed seed-connectivity graph: two seeds are adjacent iff they share a
/// class c and their distance at graph-build time is strictly below r_c.
/// Every seed is adjacent to itself, so degrees are >= 1. Stored as CSR rows
/// with ascending neighbour indices.
struct BubbleGraph {
  std::vector<std::uint32_t> offsets;    // seed_count + 1
  std::vector<std::uint32_t> neighbors;  // includes self

  std::size_t seed_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::uint32_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
};

/// One seed per non-empty voxel: the arithmetic mean of the thing points
/// falling into it, with the majority class of those points. Only points of
/// thing classes with finite coordinates inside the configured extent
/// participate; everything else gets point_seed = -1. Per-voxel sums run in
/// ascending point order, so results are bit-reproducible.
SeedSet balanced_sample(const PointCloud& cloud, const SemanticMap& labels,
                        const ClassConfig& cfg);

/// Builds the connectivity graph over the given seed positions (radius
/// queries via a uniform spatial hash with cell size max_c r_c).
BubbleGraph build_bubble_graph(const SeedSet& seeds, const ClassConfig& cfg);

/// One shrink step: every seed moves to the mean of its neighbours' current
/// positions (its own included). Summation order is ascending neighbour
/// index.
std::vector<Eigen::Vector3d> shrink_once(const std::vector<Eigen::Vector3d>& positions,
                                         const BubbleGraph& graph);

/// Applies shrink_once L times with the adjacency fixed from the initial
/// positions; classes and the point assignment are untouched.
SeedSet bubble_shrink(const SeedSet& seeds, const ClassConfig& cfg);
SeedSet bubble_shrink(const SeedSet& seeds, const BubbleGraph& graph, int iterations);

/// Groups seeds whose (shifted) positions lie within r_c/2 of a same-class
/// seed into connected components; every raw point inherits the component of
/// its dominating seed. Component IDs are 1..O ordered by each component's
/// minimum seed index.
ProposalSet group_proposals(const SeedSet& shifted, const PointCloud& cloud,
                            const SemanticMap& labels, const ClassConfig& cfg);

struct SipTimings {
  double sample_ms = 0.0;
  double shift_ms = 0.0;
  double group_ms = 0.0;
  double total_ms() const { return sample_ms + shift_ms + group_ms; }
};

struct SipOptions {
  /// Skip bubble shrinking (grouping then runs on the raw seed positions).
  bool shift = true;
};

/// The full sampling-shifting-grouping cascade. Timings, when requested,
/// report wall-clock per stage.
ProposalSet run_sip(const PointCloud& cloud, const SemanticMap& labels,
                    const ClassConfig& cfg, const SipOptions& options = {},
                    SipTimings* timings = nullptr);

}  // namespace panoseg::sip
