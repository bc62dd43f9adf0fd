#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace efl {

// Deterministic summation: terms are added in arrival order inside blocks of
// kBlockSize, and finished blocks are merged pairwise like a binary counter.
// The reduction tree depends only on the number of terms, so equal inputs give
// bit-identical results.
template <typename T>
class BlockedPairwiseSum {
 public:
  static constexpr std::size_t kBlockSize = 4096;

  void add(const T& value) {
    block_ += value;
    if (++in_block_ == kBlockSize) flush_block();
  }

  T total() const {
    // Fold from the finest level upward; independent of how the sum is used.
    T acc = block_;
    bool have = in_block_ > 0;
    for (std::size_t level = 0; level < levels_.size(); ++level) {
      if (!occupied_[level]) continue;
      acc = have ? levels_[level] + acc : levels_[level];
      have = true;
    }
    return have ? acc : T{};
  }

  std::size_t count() const { return count_blocks_ * kBlockSize + in_block_; }

 private:
  void flush_block() {
    T carry = block_;
    block_ = T{};
    in_block_ = 0;
    ++count_blocks_;
    std::size_t level = 0;
    while (true) {
      if (level == levels_.size()) {
        levels_.push_back(T{});
        occupied_.push_back(false);
      }
      if (!occupied_[level]) {
        levels_[level] = carry;
        occupied_[level] = true;
        return;
      }
      carry = levels_[level] + carry;
      occupied_[level] = false;
      ++level;
    }
  }

  T block_{};
  std::size_t in_block_ = 0;
  std::size_t count_blocks_ = 0;
  std::vector<T> levels_;
  std::vector<bool> occupied_;
};

template <typename T>
T pairwise_sum(std::span<const T> values) {
  BlockedPairwiseSum<T> acc;
  for (const T& v : values) acc.add(v);
  return acc.total();
}

}  // namespace efl
