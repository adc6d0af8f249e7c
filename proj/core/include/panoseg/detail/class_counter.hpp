#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace panoseg::detail {

/// Majority vote over class IDs; ties resolved toward the lowest ID so the
/// result is independent of insertion order.
class ClassCounter {
 public:
  void add(std::uint16_t cls, std::uint32_t n = 1) {
    for (auto& [id, count] : counts_) {
      if (id == cls) {
        count += n;
        return;
      }
    }
    counts_.emplace_back(cls, n);
  }

  std::uint16_t majority() const {
    std::uint16_t best_id = 0;
    std::uint32_t best_count = 0;
    for (const auto& [id, count] : counts_) {
      if (count > best_count || (count == best_count && id < best_id)) {
        best_id = id;
        best_count = count;
      }
    }
    return best_id;
  }

  bool empty() const { return counts_.empty(); }

 private:
  std::vector<std::pair<std::uint16_t, std::uint32_t>> counts_;
};

}  // namespace panoseg::detail
