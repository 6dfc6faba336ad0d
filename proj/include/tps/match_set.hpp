#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

namespace tps {

/// Pattern path `pattern_leaf` is a subsequence of target path `target_leaf`.
/// Both are 1-based leaf numbers.
struct Match {
  std::uint32_t pattern_leaf;
  std::uint32_t target_leaf;
  auto operator<=>(const Match&) const = default;
};

/// Sorted, duplicate-free set of matches.
class MatchSet {
 public:
  MatchSet() = default;
  explicit MatchSet(std::vector<Match> pairs) : pairs_(std::move(pairs)) { normalize(); }

  /// Appends without restoring order; call normalize() before reading.
  void add(std::uint32_t pattern_leaf, std::uint32_t target_leaf) {
    pairs_.push_back({pattern_leaf, target_leaf});
  }
  void normalize() {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  }

  const std::vector<Match>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  bool contains(std::uint32_t i, std::uint32_t j) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), Match{i, j});
  }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  friend bool operator==(const MatchSet&, const MatchSet&) = default;

 private:
  std::vector<Match> pairs_;
};

}  // namespace tps
