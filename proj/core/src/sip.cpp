#include "panoseg/sip.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "panoseg/detail/class_counter.hpp"
#include "panoseg/spatial_hash.hpp"
#include "panoseg/union_find.hpp"

namespace panoseg::sip {
namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

bool finite_point(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace

SeedSet balanced_sample(const PointCloud& cloud, const SemanticMap& labels,
                        const ClassConfig& cfg) {
  const std::size_t n = cloud.size();
  if (labels.semantic.size() != n) {
    throw std::invalid_argument("balanced_sample: label/point count mismatch");
  }

  SeedSet seeds;
  seeds.point_seed.assign(n, -1);

  struct VoxelAccum {
    Eigen::Vector3d sum{0, 0, 0};
    std::uint32_t count = 0;
    detail::ClassCounter classes;
  };
  std::vector<VoxelAccum> voxels;
  std::unordered_map<std::uint64_t, std::uint32_t> slot_of_voxel;

  const Eigen::Vector3d inv_size = cfg.voxel_size.cwiseInverse();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint16_t cls = labels.semantic[i];
    if (!cfg.is_thing(cls)) continue;
    if (!finite_point(cloud.points[i])) continue;
    const Eigen::Vector3d p = cloud.position(i);
    if (!cfg.inside_extent(p)) continue;

    const Eigen::Vector3d rel = (p - cfg.extent_min).cwiseProduct(inv_size);
    const std::uint64_t key =
        pack_cell(static_cast<std::int64_t>(std::floor(rel.x())),
                  static_cast<std::int64_t>(std::floor(rel.y())),
                  static_cast<std::int64_t>(std::floor(rel.z())));
    auto [it, inserted] =
        slot_of_voxel.try_emplace(key, static_cast<std::uint32_t>(voxels.size()));
    if (inserted) voxels.emplace_back();
    VoxelAccum& acc = voxels[it->second];
    acc.sum += p;
    acc.count += 1;
    acc.classes.add(cls);
    seeds.point_seed[i] = static_cast<std::int32_t>(it->second);
  }

  seeds.positions.reserve(voxels.size());
  seeds.seed_class.reserve(voxels.size());
  for (const VoxelAccum& acc : voxels) {
    seeds.positions.push_back(acc.sum / static_cast<double>(acc.count));
    seeds.seed_class.push_back(acc.classes.majority());
  }
  return seeds;
}

BubbleGraph build_bubble_graph(const SeedSet& seeds, const ClassConfig& cfg) {
  const std::size_t m = seeds.seed_count();
  BubbleGraph graph;
  graph.offsets.assign(m + 1, 0);
  if (m == 0) return graph;

  const double cell = cfg.max_thing_radius();
  SpatialHash hash(seeds.positions, cell);

  std::vector<std::vector<std::uint32_t>> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double radius = cfg.min_radius(seeds.seed_class[i]);
    const double r2 = radius * radius;
    auto& row = rows[i];
    hash.for_each_within(seeds.positions[i], radius,
                         [&](std::uint32_t j, double d2) {
                           if (d2 < r2 && seeds.seed_class[j] == seeds.seed_class[i]) {
                             row.push_back(j);
                           }
                         });
    std::sort(row.begin(), row.end());
  }

  for (std::size_t i = 0; i < m; ++i) {
    graph.offsets[i + 1] = graph.offsets[i] + static_cast<std::uint32_t>(rows[i].size());
  }
  graph.neighbors.reserve(graph.offsets[m]);
  for (const auto& row : rows) {
    graph.neighbors.insert(graph.neighbors.end(), row.begin(), row.end());
  }
  return graph;
}

std::vector<Eigen::Vector3d> shrink_once(const std::vector<Eigen::Vector3d>& positions,
                                         const BubbleGraph& graph) {
  std::vector<Eigen::Vector3d> next(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Eigen::Vector3d sum{0, 0, 0};
    for (std::uint32_t k = graph.offsets[i]; k < graph.offsets[i + 1]; ++k) {
      sum += positions[graph.neighbors[k]];
    }
    next[i] = sum / static_cast<double>(graph.degree(i));
  }
  return next;
}

SeedSet bubble_shrink(const SeedSet& seeds, const BubbleGraph& graph, int iterations) {
  SeedSet out = seeds;
  for (int it = 0; it < iterations; ++it) {
    out.positions = shrink_once(out.positions, graph);
  }
  return out;
}

SeedSet bubble_shrink(const SeedSet& seeds, const ClassConfig& cfg) {
  return bubble_shrink(seeds, build_bubble_graph(seeds, cfg), cfg.shift_iterations);
}

ProposalSet group_proposals(const SeedSet& shifted, const PointCloud& cloud,
                            const SemanticMap& labels, const ClassConfig& cfg) {
  const std::size_t m = shifted.seed_count();
  const std::size_t n = cloud.size();
  if (shifted.point_seed.size() != n || labels.semantic.size() != n) {
    throw std::invalid_argument("group_proposals: seed assignment does not match the cloud");
  }

  ProposalSet result;
  result.instance_of_point.assign(n, 0);
  if (m == 0) return result;

  UnionFind uf(m);
  const double cell = cfg.max_thing_radius() / 2.0;
  SpatialHash hash(shifted.positions, cell);
  for (std::size_t i = 0; i < m; ++i) {
    const double radius = cfg.min_radius(shifted.seed_class[i]) / 2.0;
    const double r2 = radius * radius;
    hash.for_each_within(shifted.positions[i], radius,
                         [&](std::uint32_t j, double d2) {
                           if (j > i && d2 < r2 &&
                               shifted.seed_class[j] == shifted.seed_class[i]) {
                             uf.unite(static_cast<std::uint32_t>(i), j);
                           }
                         });
  }

  const std::vector<std::uint32_t> component = uf.component_labels();
  std::uint32_t num_components = 0;
  for (std::uint32_t c : component) num_components = std::max(num_components, c + 1);

  result.proposals.resize(num_components);
  std::vector<Eigen::Vector3d> sums(num_components, Eigen::Vector3d::Zero());
  std::vector<detail::ClassCounter> votes(num_components);

  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t seed = shifted.point_seed[i];
    if (seed < 0) continue;
    const std::uint32_t comp = component[static_cast<std::uint32_t>(seed)];
    result.instance_of_point[i] = comp + 1;
    Proposal& prop = result.proposals[comp];
    prop.point_indices.push_back(static_cast<std::uint32_t>(i));
    sums[comp] += cloud.position(i);
    votes[comp].add(labels.semantic[i]);
  }

  for (std::uint32_t c = 0; c < num_components; ++c) {
    Proposal& prop = result.proposals[c];
    prop.id = c + 1;
    prop.class_id = votes[c].majority();
    if (!prop.point_indices.empty()) {
      prop.centroid = sums[c] / static_cast<double>(prop.point_indices.size());
    }
  }
  return result;
}

ProposalSet run_sip(const PointCloud& cloud, const SemanticMap& labels,
                    const ClassConfig& cfg, const SipOptions& options,
                    SipTimings* timings) {
  auto t0 = std::chrono::steady_clock::now();
  SeedSet seeds = balanced_sample(cloud, labels, cfg);
  const double sample_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (options.shift && !seeds.empty()) {
    seeds = bubble_shrink(seeds, cfg);
  }
  const double shift_ms = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  ProposalSet proposals = group_proposals(seeds, cloud, labels, cfg);
  const double group_ms = ms_since(t0);

  if (timings != nullptr) {
    timings->sample_ms = sample_ms;
    timings->shift_ms = shift_ms;
    timings->group_ms = group_ms;
  }
  return proposals;
}

}  // namespace panoseg::sip
