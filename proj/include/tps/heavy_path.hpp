#pragma once

#include <cstdint>
#include <vector>

#include "tps/tree.hpp"

namespace tps {

/// Heavy/light classification of a tree. The heavy child of an internal
/// node is a child of maximum subtree size, ties going to the smallest
/// preorder rank.
struct HeavyPathInfo {
  std::vector<NodeId> heavy_child;         // kNoNode for leaves
  std::vector<std::uint32_t> light_depth;  // light edges on the path to the root
  std::vector<std::uint32_t> subtree_size;

  bool is_heavy(const LabeledTree& t, NodeId v) const {
    return v != t.root() && heavy_child[t.parent(v)] == v;
  }
};

HeavyPathInfo heavy_decompose(const LabeledTree& tree);

/// floor(log2(n)) for n >= 1.
constexpr std::uint32_t floor_log2(std::uint64_t n) {
  std::uint32_t r = 0;
  while (n >>= 1) ++r;
  return r;
}

}  // namespace tps
