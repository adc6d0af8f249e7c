#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace panoseg {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  /// Dense component labels 0..k-1, ordered by each component's minimum
  /// element, so the labelling is independent of union order.
  std::vector<std::uint32_t> component_labels() {
    const std::uint32_t n = static_cast<std::uint32_t>(parent_.size());
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> label(n, kUnset);
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t root = find(i);
      if (label[root] == kUnset) label[root] = next++;
    }
    std::vector<std::uint32_t> out(n);
    for (std::uint32_t i = 0; i < n; ++i) out[i] = label[find(i)];
    return out;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace panoseg
