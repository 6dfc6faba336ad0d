#include "tps/micro_forest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "tps/heavy_path.hpp"

namespace tps {
namespace {

std::string topology_of(std::span<const std::uint32_t> local_parent) {
  std::string code;
  code.reserve(2 * local_parent.size());
  std::vector<std::uint32_t> stack;
  for (std::uint32_t i = 0; i < local_parent.size(); ++i) {
    while (!stack.empty() && stack.back() != local_parent[i]) {
      stack.pop_back();
      code.push_back(')');
    }
    code.push_back('(');
    stack.push_back(i);
  }
  code.append(stack.size(), ')');
  return code;
}

}  // namespace

namespace {

MicroForest decompose(const LabeledTree& p, std::size_t s, std::size_t first_pseudo) {
  if (s < 2) throw std::invalid_argument("micro tree size bound must be at least 2");
  if (s > kWordBits) throw std::invalid_argument("micro tree size bound exceeds the word width");
  const std::size_t n = p.size();
  const std::size_t half = s / 2;

  // Closed pieces as (root, members including root).
  std::vector<std::vector<NodeId>> pieces;
  std::vector<std::vector<NodeId>> pending(n);  // open piece hanging at each node

  auto close = [&](NodeId v, std::vector<NodeId>& group) {
    group.push_back(v);
    pieces.push_back(std::move(group));
    group.clear();
  };

  const auto order = p.preorder();
  for (std::size_t r = n; r-- > 0;) {
    const NodeId v = order[r];
    std::vector<NodeId> group;
    bool closed_here = false;
    for (NodeId c : p.children(v)) {
      auto& piece = pending[c];
      if (group.size() + piece.size() > s - 1) {
        close(v, group);
        closed_here = true;
      }
      group.insert(group.end(), piece.begin(), piece.end());
      std::vector<NodeId>().swap(piece);
    }
    if (v == p.root()) {
      if (!group.empty() || !closed_here) close(v, group);
    } else if (group.size() >= half) {
      close(v, group);
      pending[v] = {v};
    } else {
      group.push_back(v);
      pending[v] = std::move(group);
    }
  }

  for (auto& piece : pieces)
    std::sort(piece.begin(), piece.end(),
              [&](NodeId a, NodeId b) { return p.preorder_rank(a) < p.preorder_rank(b); });
  std::stable_sort(pieces.begin(), pieces.end(), [&](const auto& a, const auto& b) {
    return p.preorder_rank(a.front()) < p.preorder_rank(b.front());
  });

  MicroForest f;
  f.s = s;
  f.home.assign(n, NodeHome{0, 0});
  f.micros.resize(pieces.size());
  std::vector<std::uint32_t> slot_of(n, 0);
  for (std::size_t m = 0; m < pieces.size(); ++m) {
    MicroTree& mt = f.micros[m];
    mt.nodes = std::move(pieces[m]);
    const std::size_t k = mt.nodes.size();
    for (std::uint32_t i = 0; i < k; ++i) {
      slot_of[mt.nodes[i]] = i;
      if (i > 0) f.home[mt.nodes[i]] = NodeHome{static_cast<std::uint32_t>(m), i};
    }
    std::vector<std::uint32_t> local_parent(k, 0);
    mt.child_masks.assign(k, 0);
    for (std::uint32_t i = 1; i < k; ++i) {
      local_parent[i] = slot_of[p.parent(mt.nodes[i])];
      mt.child_masks[local_parent[i]] |= Word{1} << i;
    }
    mt.topology = topology_of(local_parent);
    for (std::uint32_t i = 0; i < k; ++i) {
      const NodeId v = mt.nodes[i];
      if (v >= first_pseudo) mt.leaf_mask |= Word{1} << i;
      else mt.eq[p.label(v)] |= Word{1} << i;
    }
    if (mt.root() == p.root()) f.roots.push_back(m);
  }
  f.home[p.root()] = NodeHome{static_cast<std::uint32_t>(f.roots.front()), 0};
  for (std::size_t m = 0; m < f.micros.size(); ++m) {
    MicroTree& mt = f.micros[m];
    if (mt.root() == p.root()) continue;
    const NodeHome h = f.home[mt.root()];
    mt.parent = h.micro;
    mt.root_slot = h.slot;
    f.micros[h.micro].children.push_back(m);
  }
  return f;
}

}  // namespace

MicroForest micro_decompose(const AugmentedPattern& pattern, std::size_t s) {
  return decompose(pattern.tree, s, pattern.original_size);
}

MicroForest micro_decompose(const LabeledTree& tree, std::size_t s) {
  return decompose(tree, s, tree.size());
}

std::optional<std::string> check_decomposition(const LabeledTree& p, const MicroForest& f) {
  const std::size_t n = p.size();
  const std::size_t s = f.s;
  if (f.micros.empty()) return "no micro trees";
  const std::size_t bound = 4 * ((n + s - 1) / s);
  if (f.micros.size() > bound)
    return "micro tree count " + std::to_string(f.micros.size()) + " exceeds " + std::to_string(bound);

  std::vector<std::uint32_t> cover(n, 0), non_root(n, 0);
  for (std::size_t m = 0; m < f.micros.size(); ++m) {
    const MicroTree& mt = f.micros[m];
    const std::string id = "micro tree " + std::to_string(m);
    if (mt.nodes.empty()) return id + " is empty";
    if (mt.size() > s) return id + " has " + std::to_string(mt.size()) + " nodes, bound is " + std::to_string(s);
    for (std::size_t i = 0; i < mt.size(); ++i) {
      const NodeId v = mt.nodes[i];
      if (v >= n) return id + " references an unknown node";
      ++cover[v];
      if (i > 0) {
        ++non_root[v];
        // Connected: every non-root member's parent is in the piece.
        if (std::find(mt.nodes.begin(), mt.nodes.end(), p.parent(v)) == mt.nodes.end())
          return id + " is not connected";
        if (p.preorder_rank(v) <= p.preorder_rank(mt.nodes[i - 1])) return id + " is not in preorder";
      }
    }
    if (mt.topology.size() != 2 * mt.size()) return id + " has a malformed topology code";
    if (ChildTableCache::child_masks_of(mt.topology) != mt.child_masks)
      return id + " child masks disagree with its topology code";
    Word all = 0;
    for (const auto& [label, mask] : mt.eq) {
      if (label == kPseudoLabel) return id + " maps the pseudo label";
      all |= mask;
    }
    if ((all | mt.leaf_mask) != (mt.size() == kWordBits ? ~Word{0} : (Word{1} << mt.size()) - 1))
      return id + " label masks do not cover its nodes";
    if (mt.leaf_mask & 1) return id + " has a pseudo-leaf root";
    if (mt.parent != kNoMicro) {
      const MicroTree& par = f.micros[mt.parent];
      if (mt.parent >= m) return id + " precedes its parent";
      if (mt.root_slot == 0 || mt.root_slot >= par.size() || par.nodes[mt.root_slot] != mt.root())
        return id + " has a wrong parent slot";
    } else if (mt.root() != p.root()) {
      return id + " has no parent but is not rooted at the pattern root";
    }
  }
  // Two pieces share a node only if it is the root of at least one of them:
  // equivalently each node is a non-root member of at most one piece.
  for (NodeId v = 0; v < n; ++v) {
    if (cover[v] == 0) return "node " + std::to_string(v) + " is not covered";
    if (non_root[v] > 1) return "node " + std::to_string(v) + " is a non-root member of two micro trees";
    if (v != p.root() && non_root[v] != 1) return "node " + std::to_string(v) + " has no owning micro tree";
    const NodeHome h = f.home[v];
    if (h.micro >= f.micros.size() || f.micros[h.micro].nodes[h.slot] != v)
      return "home of node " + std::to_string(v) + " is wrong";
  }
  return std::nullopt;
}

std::size_t choose_s(std::size_t n_t, std::size_t word_bits, TableMode mode) {
  std::size_t s = std::min<std::size_t>(word_bits, floor_log2(static_cast<std::uint64_t>(n_t) + 1));
  if (mode == TableMode::kEager) {
    while (s > 2 && static_cast<long double>(s) * std::pow(2.0L, 3.0L * static_cast<long double>(s)) >
                        static_cast<long double>(n_t))
      --s;
  }
  return std::max<std::size_t>(2, s);
}

std::vector<Word> ChildTableCache::child_masks_of(std::string_view topology) {
  std::vector<Word> masks;
  std::vector<std::uint32_t> stack;
  std::uint32_t next = 0;
  for (char c : topology) {
    if (c == '(') {
      if (!stack.empty()) masks[stack.back()] |= Word{1} << next;
      masks.push_back(0);
      stack.push_back(next++);
    } else {
      if (stack.empty()) throw std::invalid_argument("unbalanced topology code");
      stack.pop_back();
    }
  }
  if (!stack.empty()) throw std::invalid_argument("unbalanced topology code");
  return masks;
}

ChildTableCache::Table ChildTableCache::build_table(std::span<const Word> child_masks) {
  if (child_masks.size() > kMaxTableBits)
    throw std::invalid_argument("micro tree of " + std::to_string(child_masks.size()) +
                                " nodes is too large for a child table");
  Table table(std::size_t{1} << child_masks.size());
  table[0] = 0;
  for (std::size_t x = 1; x < table.size(); ++x)
    table[x] = table[x & (x - 1)] | child_masks[static_cast<std::size_t>(std::countr_zero(x))];
  return table;
}

const ChildTableCache::Table& ChildTableCache::table(const MicroTree& m) {
  std::lock_guard lock(mutex_);
  auto it = tables_.find(m.topology);
  if (it != tables_.end()) return *it->second;
  if (mode_ == TableMode::kEager)
    throw std::logic_error("eager child table cache has no entry for shape " + m.topology);
  auto table = std::make_unique<Table>(build_table(m.child_masks));
  ++builds_;
  return *tables_.emplace(m.topology, std::move(table)).first->second;
}

const ChildTableCache::Table* ChildTableCache::find(std::string_view topology) const {
  std::lock_guard lock(mutex_);
  const auto it = tables_.find(std::string(topology));
  return it == tables_.end() ? nullptr : it->second.get();
}

void ChildTableCache::install(std::string topology, Table table) {
  std::lock_guard lock(mutex_);
  tables_[std::move(topology)] = std::make_unique<Table>(std::move(table));
}

void ChildTableCache::prebuild(std::size_t s) {
  if (s > kMaxTableBits) throw std::invalid_argument("prebuild size exceeds the child table limit");
  // Every ordered rooted tree with k nodes, as a balanced-parenthesis
  // string whose root pair encloses everything else.
  std::string code;
  std::function<void(std::size_t, int)> extend = [&](std::size_t left, int depth) {
    if (depth == 0) {
      if (left != 0) return;
      std::lock_guard lock(mutex_);
      if (!tables_.count(code)) {
        tables_.emplace(code, std::make_unique<Table>(build_table(child_masks_of(code))));
        ++builds_;
      }
      return;
    }
    if (left > 0) {
      code.push_back('(');
      extend(left - 1, depth + 1);
      code.pop_back();
    }
    code.push_back(')');
    extend(left, depth - 1);
    code.pop_back();
  };
  for (std::size_t k = 1; k <= s; ++k) {
    code = "(";
    extend(k - 1, 1);
  }
}

std::size_t ChildTableCache::shapes() const {
  std::lock_guard lock(mutex_);
  return tables_.size();
}

std::size_t ChildTableCache::builds() const {
  std::lock_guard lock(mutex_);
  return builds_;
}

}  // namespace tps
