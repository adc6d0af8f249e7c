#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace panoseg {

/// Packs a signed 3D cell coordinate into one 64-bit key (21 bits per axis,
/// good for ~±1e6 cells; far beyond any scan extent / cell size in use).
inline std::uint64_t pack_cell(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
  constexpr std::uint64_t kMask = (1ull << 21) - 1;
  return ((static_cast<std::uint64_t>(ix) & kMask) << 42) |
         ((static_cast<std::uint64_t>(iy) & kMask) << 21) |
         (static_cast<std::uint64_t>(iz) & kMask);
}

/// Uniform-grid index over a fixed point set. Build is one pass; queries with
/// radius <= cell size probe the 27 surrounding cells (larger radii fall back
/// to the covering cell range). Candidates are visited in a fixed cell order
/// with ascending point indices inside each cell, so traversal is
/// deterministic.
class SpatialHash {
 public:
  SpatialHash(const std::vector<Eigen::Vector3d>& points, double cell_size)
      : points_(points), cell_(cell_size), inv_cell_(1.0 / cell_size) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
    keyed.reserve(points.size());
    for (std::uint32_t i = 0; i < points.size(); ++i) {
      keyed.emplace_back(key_of(points[i]), i);
    }
    std::sort(keyed.begin(), keyed.end());
    order_.resize(keyed.size());
    ranges_.reserve(keyed.size() / 2 + 1);
    for (std::size_t i = 0; i < keyed.size();) {
      std::size_t j = i;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) {
        order_[j] = keyed[j].second;
        ++j;
      }
      ranges_.emplace(keyed[i].first,
                      std::make_pair(static_cast<std::uint32_t>(i),
                                     static_cast<std::uint32_t>(j)));
      i = j;
    }
  }

  std::size_t size() const { return points_.size(); }

  /// Calls f(index, squared_distance) for every point with
  /// |p - q| <= radius. Callers needing a strict comparison re-check.
  template <typename F>
  void for_each_within(const Eigen::Vector3d& q, double radius, F&& f) const {
    const double r2 = radius * radius;
    const std::int64_t x0 = cell_coord(q.x() - radius);
    const std::int64_t x1 = cell_coord(q.x() + radius);
    const std::int64_t y0 = cell_coord(q.y() - radius);
    const std::int64_t y1 = cell_coord(q.y() + radius);
    const std::int64_t z0 = cell_coord(q.z() - radius);
    const std::int64_t z1 = cell_coord(q.z() + radius);
    for (std::int64_t ix = x0; ix <= x1; ++ix) {
      for (std::int64_t iy = y0; iy <= y1; ++iy) {
        for (std::int64_t iz = z0; iz <= z1; ++iz) {
          const auto it = ranges_.find(pack_cell(ix, iy, iz));
          if (it == ranges_.end()) continue;
          for (std::uint32_t k = it->second.first; k < it->second.second; ++k) {
            const std::uint32_t idx = order_[k];
            const double d2 = (points_[idx] - q).squaredNorm();
            if (d2 <= r2) f(idx, d2);
          }
        }
      }
    }
  }

  /// Nearest point to q, searched with doubling probe radii. Every probe
  /// scans the full covering cell cube, so the first hit is already exact.
  /// Ties broken by lowest index. Returns -1 only for an empty hash.
  std::int64_t nearest(const Eigen::Vector3d& q) const {
    if (points_.empty()) return -1;
    double radius = cell_;
    for (int attempt = 0; attempt < 48; ++attempt, radius *= 2.0) {
      std::int64_t best = -1;
      double best_d2 = std::numeric_limits<double>::infinity();
      for_each_within(q, radius, [&](std::uint32_t idx, double d2) {
        if (d2 < best_d2 ||
            (d2 == best_d2 && static_cast<std::int64_t>(idx) < best)) {
          best_d2 = d2;
          best = idx;
        }
      });
      if (best >= 0) return best;
    }
    // Degenerate spread: fall back to a linear scan.
    std::int64_t best = 0;
    double best_d2 = (points_[0] - q).squaredNorm();
    for (std::uint32_t i = 1; i < points_.size(); ++i) {
      const double d2 = (points_[i] - q).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    return best;
  }

 private:
  std::int64_t cell_coord(double v) const {
    return static_cast<std::int64_t>(std::floor(v * inv_cell_));
  }
  std::uint64_t key_of(const Eigen::Vector3d& p) const {
    return pack_cell(cell_coord(p.x()), cell_coord(p.y()), cell_coord(p.z()));
  }

  std::vector<Eigen::Vector3d> points_;
  double cell_;
  double inv_cell_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> ranges_;
};

}  // namespace panoseg
