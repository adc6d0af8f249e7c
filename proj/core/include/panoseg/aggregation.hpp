#pragma once

#include "panoseg/types.hpp"

namespace panoseg::aggregation {

/// Scored unordered proposal pair; a and b are 0-based indices into
/// ProposalSet::proposals with a < b.
struct AffinityPair {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double score = 0.0;
};

/// Candidate pairs restricted to centroid-space K-nearest-neighbour
/// candidacy; scores live in [0, 1].
struct AffinityGraph {
  std::vector<AffinityPair> pairs;
};

/// Pluggable pairwise proposal affinity. Implementations must be symmetric
/// in (a, b) and return values in [0, 1].
class AffinityScorer {
 public:
  virtual ~AffinityScorer() = default;
  virtual double score(const Proposal& a, const Proposal& b,
                       const PointCloud& cloud) const = 0;
};

/// Distance between two proposals' point sets: the minimum point-to-point
/// gap, searched with a spatial hash and capped at `cutoff` (returns
/// infinity when the sets are farther apart than the cutoff).
double point_set_gap(const Proposal& a, const Proposal& b, const PointCloud& cloud,
                     double cutoff);

/// Default scorer: s = max(0, 1 - gap / g_max) with g_max the per-class gap
/// cutoff. Touching proposals score 1, proposals at or beyond g_max score 0.
double geometric_affinity(const Proposal& a, const Proposal& b,
                          const PointCloud& cloud, double gap_cutoff);

class GapAffinityScorer final : public AffinityScorer {
 public:
  explicit GapAffinityScorer(const ClassConfig& cfg) : cfg_(&cfg) {}
  double score(const Proposal& a, const Proposal& b,
               const PointCloud& cloud) const override;

 private:
  const ClassConfig* cfg_;
};

/// Scores every unordered same-class pair within K-nearest-neighbour
/// candidacy of the proposal centroids. Cross-class affinity is identically
/// zero, so those pairs are omitted. k <= 0 falls back to cfg-style default 5.
AffinityGraph score_affinities(const ProposalSet& proposals, const PointCloud& cloud,
                               const AffinityScorer& scorer, int k = 5);

/// Merges proposals connected by pairs with score strictly above the
/// per-class merge threshold (connected components over threshold edges).
/// Merged proposals take the union of point sets, a recomputed centroid, the
/// majority class of member points, and dense IDs 1..O' ordered by each
/// group's minimum original ID.
ProposalSet merge(const ProposalSet& proposals, const AffinityGraph& graph,
                  const PointCloud& cloud, const SemanticMap& labels,
                  const ClassConfig& cfg);

}  // namespace panoseg::aggregation
