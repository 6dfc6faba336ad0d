#include "tps/naive.hpp"

#include <stdexcept>

namespace tps {

MatchSet solve_naive(const LabeledTree& pattern, const LabeledTree& target) {
  if (!pattern.ranked() || !target.ranked()) throw std::invalid_argument("trees must be ranked");
  std::vector<std::vector<LabelId>> target_paths;
  target_paths.reserve(target.leaf_count());
  for (NodeId y : target.leaves()) target_paths.push_back(label_path(target, y));

  MatchSet out;
  for (std::uint32_t i = 1; i <= pattern.leaf_count(); ++i) {
    const auto p = label_path(pattern, pattern.leaf(i));
    for (std::uint32_t j = 1; j <= target_paths.size(); ++j)
      if (is_subsequence<LabelId>(p, target_paths[j - 1])) out.add(i, j);
  }
  out.normalize();
  return out;
}

}  // namespace tps
