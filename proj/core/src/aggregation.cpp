#include "panoseg/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "panoseg/detail/class_counter.hpp"
#include "panoseg/spatial_hash.hpp"
#include "panoseg/union_find.hpp"

namespace panoseg::aggregation {

double point_set_gap(const Proposal& a, const Proposal& b, const PointCloud& cloud,
                     double cutoff) {
  if (cutoff <= 0.0 || a.point_indices.empty() || b.point_indices.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  const Proposal& small = a.point_indices.size() <= b.point_indices.size() ? a : b;
  const Proposal& large = a.point_indices.size() <= b.point_indices.size() ? b : a;

  std::vector<Eigen::Vector3d> pts;
  pts.reserve(small.point_indices.size());
  for (std::uint32_t idx : small.point_indices) pts.push_back(cloud.position(idx));
  SpatialHash hash(pts, cutoff);

  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t idx : large.point_indices) {
    hash.for_each_within(cloud.position(idx), cutoff,
                         [&](std::uint32_t, double d2) { best = std::min(best, d2); });
    if (best == 0.0) break;
  }
  return std::isfinite(best) ? std::sqrt(best) : best;
}

double geometric_affinity(const Proposal& a, const Proposal& b,
                          const PointCloud& cloud, double gap_cutoff) {
  const double gap = point_set_gap(a, b, cloud, gap_cutoff);
  if (!std::isfinite(gap)) return 0.0;
  return std::max(0.0, 1.0 - gap / gap_cutoff);
}

double GapAffinityScorer::score(const Proposal& a, const Proposal& b,
                                const PointCloud& cloud) const {
  return geometric_affinity(a, b, cloud, cfg_->gap_cutoff(a.class_id));
}

AffinityGraph score_affinities(const ProposalSet& proposals, const PointCloud& cloud,
                               const AffinityScorer& scorer, int k) {
  AffinityGraph graph;
  const std::size_t count = proposals.count();
  if (count < 2) return graph;
  if (k < 1) k = 5;

  // Unordered candidacy: (i, j) is a candidate when either is among the K
  // centroid-nearest neighbours of the other.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
  std::vector<std::pair<double, std::uint32_t>> scratch;
  for (std::uint32_t i = 0; i < count; ++i) {
    scratch.clear();
    for (std::uint32_t j = 0; j < count; ++j) {
      if (j == i) continue;
      const double d2 =
          (proposals.proposals[i].centroid - proposals.proposals[j].centroid).squaredNorm();
      scratch.emplace_back(d2, j);
    }
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), scratch.size());
    std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(take),
                      scratch.end());
    for (std::size_t t = 0; t < take; ++t) {
      const std::uint32_t j = scratch[t].second;
      candidates.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& [a, b] : candidates) {
    if (proposals.proposals[a].class_id != proposals.proposals[b].class_id) continue;
    const double s =
        std::clamp(scorer.score(proposals.proposals[a], proposals.proposals[b], cloud),
                   0.0, 1.0);
    graph.pairs.push_back({a, b, s});
  }
  return graph;
}

ProposalSet merge(const ProposalSet& proposals, const AffinityGraph& graph,
                  const PointCloud& cloud, const SemanticMap& labels,
                  const ClassConfig& cfg) {
  const std::size_t count = proposals.count();
  ProposalSet result;
  result.instance_of_point.assign(proposals.instance_of_point.size(), 0);
  if (count == 0) return result;

  UnionFind uf(count);
  for (const AffinityPair& pair : graph.pairs) {
    const Proposal& a = proposals.proposals[pair.a];
    const Proposal& b = proposals.proposals[pair.b];
    if (a.class_id != b.class_id) continue;  // merging never mixes classes
    if (pair.score > cfg.merge_threshold(a.class_id)) {
      uf.unite(pair.a, pair.b);
    }
  }

  const std::vector<std::uint32_t> component = uf.component_labels();
  std::uint32_t merged_count = 0;
  for (std::uint32_t c : component) merged_count = std::max(merged_count, c + 1);

  result.proposals.resize(merged_count);
  std::vector<Eigen::Vector3d> sums(merged_count, Eigen::Vector3d::Zero());
  std::vector<detail::ClassCounter> votes(merged_count);

  for (std::size_t i = 0; i < proposals.instance_of_point.size(); ++i) {
    const std::uint32_t old_id = proposals.instance_of_point[i];
    if (old_id == 0) continue;
    const std::uint32_t comp = component[old_id - 1];
    result.instance_of_point[i] = comp + 1;
    Proposal& prop = result.proposals[comp];
    prop.point_indices.push_back(static_cast<std::uint32_t>(i));
    sums[comp] += cloud.position(i);
    votes[comp].add(labels.semantic[i]);
  }

  for (std::uint32_t c = 0; c < merged_count; ++c) {
    Proposal& prop = result.proposals[c];
    prop.id = c + 1;
    prop.class_id = votes[c].majority();
    if (!prop.point_indices.empty()) {
      prop.centroid = sums[c] / static_cast<double>(prop.point_indices.size());
    }
  }
  return result;
}

}  // namespace panoseg::aggregation
