#include "tps/heavy_path.hpp"

namespace tps {

HeavyPathInfo heavy_decompose(const LabeledTree& tree) {
  const std::size_t n = tree.size();
  HeavyPathInfo h;
  h.heavy_child.assign(n, kNoNode);
  h.light_depth.assign(n, 0);
  h.subtree_size.assign(n, 1);

  const auto order = tree.preorder();
  for (std::size_t r = n; r-- > 1;) {
    const NodeId v = order[r];
    h.subtree_size[tree.parent(v)] += h.subtree_size[v];
  }
  for (const NodeId v : order) {
    // Children are already in increasing preorder, so strict '>' keeps the
    // first maximal child.
    NodeId best = kNoNode;
    for (NodeId c : tree.children(v))
      if (best == kNoNode || h.subtree_size[c] > h.subtree_size[best]) best = c;
    h.heavy_child[v] = best;
    for (NodeId c : tree.children(v)) h.light_depth[c] = h.light_depth[v] + (c == best ? 0 : 1);
  }
  return h;
}

}  // namespace tps
