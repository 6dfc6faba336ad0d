#pragma once

#include <span>

#include "tps/match_set.hpp"
#include "tps/tree.hpp"

namespace tps {

/// Greedy left-to-right scan: true iff `p` is obtained from `t` by deletions.
template <typename T>
bool is_subsequence(std::span<const T> p, std::span<const T> t) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < t.size() && i < p.size(); ++j)
    if (p[i] == t[j]) ++i;
  return i == p.size();
}

/// Tests every (pattern path, target path) pair with is_subsequence.
/// Both trees must be ranked over one LabelTable.
MatchSet solve_naive(const LabeledTree& pattern, const LabeledTree& target);

}  // namespace tps
