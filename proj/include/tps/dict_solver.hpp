#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tps/match_set.hpp"
#include "tps/tree.hpp"

namespace tps {

struct DictStats {
  std::uint64_t touches = 0;          // nodes moved or inserted by down/up
  std::uint64_t downs = 0;
  std::uint64_t ups = 0;
  std::size_t max_current = 0;        // largest |X^c|
  std::size_t max_displaced = 0;      // largest total |X^p| (excluding the sentinel)
  std::uint32_t max_path_insertions = 0;  // largest per-node X^c insertion count on one path
};

/// Node dictionary holding one traversal state.
///
/// `current` (X^c) buckets the state's pattern nodes by label; `displaced`
/// (X^p) buckets, per target node y, the pattern nodes that down(y) removed.
/// Every pattern node sits in at most one bucket, so a single intrusive
/// prev/next cell per node backs all lists.
class DictState {
 public:
  /// Initial state: X^c = {root(P)}, X^p = {top} keyed to a sentinel target.
  DictState(const AugmentedPattern& pattern, const LabeledTree& target);

  /// Moves every current node labeled label(y) into displaced[y] and adds
  /// its children to the current set.
  void down(NodeId y);
  /// Inverse of down(y) once every later down has been undone.
  void up(NodeId y);

  /// Pseudo-leaves currently in the state (bucket of the pseudo label).
  template <typename F>
  void for_each_pseudo_leaf(F&& f) const {
    for (NodeId x = current_head_[rank_of(kPseudoLabel)]; x != kNoNode; x = cell_[x].next) f(x);
  }

  /// Sorted node set of X^c.
  std::vector<NodeId> current() const;
  /// Sorted node set of X^p[y].
  std::vector<NodeId> displaced(NodeId y) const;
  /// Sorted (target, pattern node) pairs over all of X^p, sentinel included
  /// as (sentinel_target(), top()).
  std::vector<std::pair<NodeId, NodeId>> displaced_all() const;

  std::size_t current_size() const noexcept { return current_size_; }
  std::size_t displaced_size() const noexcept { return displaced_size_; }

  NodeId top() const noexcept { return top_; }
  NodeId sentinel_target() const noexcept { return sentinel_target_; }

  /// Per-node count of X^c insertions on the current root-to-y path.
  std::uint32_t path_insertions(NodeId x) const { return path_insertions_[x]; }

  const DictStats& stats() const noexcept { return stats_; }

  /// Checks bucket labels, list links, and that each node is in at most
  /// one bucket. Empty string when consistent.
  std::string check_links() const;

 private:
  enum class Where : std::uint8_t { kNone, kCurrent, kDisplaced };
  struct Cell {
    NodeId prev = kNoNode;
    NodeId next = kNoNode;
    Where where = Where::kNone;
    NodeId key = kNoNode;  // label rank or target id
  };

  void push_current(NodeId x);
  void unlink_current(NodeId x);
  void push_displaced(NodeId y, NodeId x);

  const AugmentedPattern* pattern_;
  const LabeledTree* target_;
  NodeId top_;
  NodeId sentinel_target_;
  std::vector<Cell> cell_;
  std::vector<NodeId> current_head_;
  std::vector<NodeId> displaced_head_;
  std::vector<std::uint32_t> path_insertions_;
  std::size_t current_size_ = 0;
  std::size_t displaced_size_ = 0;
  DictStats stats_;
};

/// Called after the state for target node y has been computed.
using DictObserver = std::function<void(NodeId y, const DictState& state)>;

/// Depth-first traversal of the target keeping a single DictState, with
/// children visited in increasing preorder. Pattern and target must share
/// one LabelTable.
MatchSet solve_dict(const AugmentedPattern& pattern, const LabeledTree& target,
                    DictStats* stats = nullptr, const DictObserver& observer = {});

}  // namespace tps
