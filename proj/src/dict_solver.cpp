#include "tps/dict_solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tps {
namespace {

std::uint32_t label_bound(const LabeledTree& t) {
  std::uint32_t m = 0;
  for (NodeId v = 0; v < t.size(); ++v) m = std::max(m, rank_of(t.label(v)));
  return m + 1;
}

}  // namespace

DictState::DictState(const AugmentedPattern& pattern, const LabeledTree& target)
    : pattern_(&pattern),
      target_(&target),
      top_(static_cast<NodeId>(pattern.tree.size())),
      sentinel_target_(static_cast<NodeId>(target.size())) {
  if (!pattern.tree.ranked() || !target.ranked()) throw std::invalid_argument("trees must be ranked");
  cell_.resize(pattern.tree.size() + 1);
  current_head_.assign(std::max(label_bound(pattern.tree), label_bound(target)), kNoNode);
  displaced_head_.assign(target.size() + 1, kNoNode);
  path_insertions_.assign(pattern.tree.size() + 1, 0);

  push_displaced(sentinel_target_, top_);
  displaced_size_ = 0;  // the sentinel is not counted
  push_current(pattern.tree.root());
  path_insertions_[pattern.tree.root()] = 1;
  stats_.max_current = 1;
  stats_.max_path_insertions = 1;
}

void DictState::push_current(NodeId x) {
  const std::uint32_t key = rank_of(pattern_->tree.label(x));
  Cell& c = cell_[x];
  c.prev = kNoNode;
  c.next = current_head_[key];
  c.where = Where::kCurrent;
  c.key = key;
  if (c.next != kNoNode) cell_[c.next].prev = x;
  current_head_[key] = x;
  ++current_size_;
}

void DictState::unlink_current(NodeId x) {
  Cell& c = cell_[x];
  if (c.prev != kNoNode) cell_[c.prev].next = c.next;
  else current_head_[c.key] = c.next;
  if (c.next != kNoNode) cell_[c.next].prev = c.prev;
  c = Cell{};
  --current_size_;
}

void DictState::push_displaced(NodeId y, NodeId x) {
  Cell& c = cell_[x];
  c.prev = kNoNode;
  c.next = displaced_head_[y];
  c.where = Where::kDisplaced;
  c.key = y;
  if (c.next != kNoNode) cell_[c.next].prev = x;
  displaced_head_[y] = x;
  ++displaced_size_;
}

void DictState::down(NodeId y) {
  ++stats_.downs;
  const std::uint32_t key = rank_of(target_->label(y));
  NodeId x = current_head_[key];
  current_head_[key] = kNoNode;
  const auto& p = pattern_->tree;
  while (x != kNoNode) {
    const NodeId next = cell_[x].next;
    --current_size_;
    push_displaced(y, x);
    ++stats_.touches;
    for (NodeId child : p.children(x)) {
      push_current(child);
      ++stats_.touches;
      stats_.max_path_insertions = std::max(stats_.max_path_insertions, ++path_insertions_[child]);
    }
    x = next;
  }
  stats_.max_current = std::max(stats_.max_current, current_size_);
  stats_.max_displaced = std::max(stats_.max_displaced, displaced_size_);
}

void DictState::up(NodeId y) {
  ++stats_.ups;
  NodeId x = displaced_head_[y];
  displaced_head_[y] = kNoNode;
  const auto& p = pattern_->tree;
  while (x != kNoNode) {
    const NodeId next = cell_[x].next;
    for (NodeId child : p.children(x)) {
      unlink_current(child);
      --path_insertions_[child];
      ++stats_.touches;
    }
    --displaced_size_;
    push_current(x);
    ++stats_.touches;
    x = next;
  }
}

std::vector<NodeId> DictState::current() const {
  std::vector<NodeId> out;
  out.reserve(current_size_);
  for (NodeId head : current_head_)
    for (NodeId x = head; x != kNoNode; x = cell_[x].next) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> DictState::displaced(NodeId y) const {
  std::vector<NodeId> out;
  for (NodeId x = displaced_head_[y]; x != kNoNode; x = cell_[x].next) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<NodeId, NodeId>> DictState::displaced_all() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId y = 0; y < displaced_head_.size(); ++y)
    for (NodeId x = displaced_head_[y]; x != kNoNode; x = cell_[x].next) out.emplace_back(y, x);
  std::sort(out.begin(), out.end());
  return out;
}

std::string DictState::check_links() const {
  const auto& p = pattern_->tree;
  std::vector<int> visits(cell_.size(), 0);
  std::size_t current_count = 0, displaced_count = 0;
  auto walk = [&](NodeId head, Where where, NodeId key) -> std::string {
    NodeId prev = kNoNode;
    for (NodeId x = head; x != kNoNode; prev = x, x = cell_[x].next) {
      if (x >= cell_.size()) return "link out of range";
      if (++visits[x] > 1) return "node " + std::to_string(x) + " reachable twice";
      const Cell& c = cell_[x];
      if (c.prev != prev) return "broken prev link at node " + std::to_string(x);
      if (c.where != where || c.key != key) return "node " + std::to_string(x) + " has stale bucket tag";
      if (where == Where::kCurrent && rank_of(p.label(x)) != key)
        return "node " + std::to_string(x) + " in a bucket of another label";
    }
    return {};
  };
  for (NodeId k = 0; k < current_head_.size(); ++k) {
    if (auto e = walk(current_head_[k], Where::kCurrent, k); !e.empty()) return e;
  }
  for (NodeId y = 0; y < displaced_head_.size(); ++y) {
    if (auto e = walk(displaced_head_[y], Where::kDisplaced, y); !e.empty()) return e;
  }
  for (NodeId x = 0; x < cell_.size(); ++x) {
    if (cell_[x].where == Where::kCurrent) ++current_count;
    if (cell_[x].where == Where::kDisplaced) ++displaced_count;
    if (cell_[x].where != Where::kNone && visits[x] != 1)
      return "node " + std::to_string(x) + " tagged but not reachable";
  }
  if (current_count != current_size_) return "current size counter out of sync";
  if (displaced_count != displaced_size_ + 1) return "displaced size counter out of sync";
  // A displaced node's children are exactly the nodes its down inserted;
  // while it stays displaced they are current or displaced further down.
  for (NodeId x = 0; x < p.size(); ++x) {
    if (cell_[x].where != Where::kDisplaced) continue;
    for (NodeId c : p.children(x))
      if (cell_[c].where == Where::kNone) return "child " + std::to_string(c) + " of displaced node lost";
  }
  return {};
}

MatchSet solve_dict(const AugmentedPattern& pattern, const LabeledTree& target, DictStats* stats,
                    const DictObserver& observer) {
  DictState state(pattern, target);
  MatchSet out;
  // Frames: target node and index of its next child.
  std::vector<std::pair<NodeId, std::size_t>> stack;
  auto enter = [&](NodeId y) {
    state.down(y);
    if (observer) observer(y, state);
    if (target.is_leaf(y)) {
      const std::uint32_t j = target.leaf_number(y);
      state.for_each_pseudo_leaf([&](NodeId x) { out.add(pattern.pseudo_number(x), j); });
    }
    stack.emplace_back(y, 0);
  };
  enter(target.root());
  while (!stack.empty()) {
    auto& [y, next] = stack.back();
    const auto kids = target.children(y);
    if (next < kids.size()) {
      enter(kids[next++]);
      continue;
    }
    state.up(y);
    stack.pop_back();
  }
  out.normalize();
  if (stats) *stats = state.stats();
  return out;
}

}  // namespace tps
