#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "tps/heavy_path.hpp"
#include "tps/match_set.hpp"
#include "tps/micro_forest.hpp"
#include "tps/tree.hpp"

namespace tps {

/// One word per micro tree, in MicroForest order.
struct BitState {
  std::vector<Word> words;
  friend bool operator==(const BitState&, const BitState&) = default;
};

/// Eager mode enumerates every shape up to s nodes; beyond this the shape
/// count makes that impractical.
inline constexpr std::size_t kMaxEagerBits = 10;

struct BitparOptions {
  std::size_t micro_size = 0;  // 0: choose_s(n_T, kWordBits, mode) capped at kMaxTableBits
  TableMode mode = TableMode::kLazy;
  ChildTableCache* cache = nullptr;  // shared cache; a private one is used if null
};

struct BitparStats {
  std::size_t micro_size = 0;
  std::size_t micro_count = 0;
  std::uint64_t down_m_calls = 0;
  std::uint64_t down_global_calls = 0;
  std::size_t max_live_states = 0;
  std::size_t table_shapes = 0;
};

/// Preprocessed pattern: micro decomposition plus the child table of every
/// micro tree. Immutable after construction apart from its counters.
class BitparPattern {
 public:
  BitparPattern(const AugmentedPattern& pattern, std::size_t s, ChildTableCache& cache);

  const AugmentedPattern& pattern() const noexcept { return *pattern_; }
  const MicroForest& forest() const noexcept { return forest_; }

  /// State holding only root(P).
  BitState initial_state() const;
  /// Recursive Down over the micro-tree hierarchy: root micro trees get
  /// b = 0; a child micro tree gets b = 1 iff its root is set in the
  /// parent's freshly computed word. Exactly one down_m per micro tree.
  void down_global(const BitState& in, BitState& out, LabelId label) const;
  BitState down_global(const BitState& in, LabelId label) const {
    BitState out;
    down_global(in, out, label);
    return out;
  }

  /// Leaf numbers of the pseudo-leaves in `state`, ascending.
  std::vector<std::uint32_t> report_leaves(const BitState& state) const;
  template <typename F>
  void for_each_leaf(const BitState& state, F&& f) const;

  /// Pattern nodes in `state`, each read from its owning micro tree; sorted.
  std::vector<NodeId> decode(const BitState& state) const;
  /// Inverse of decode for an arbitrary node set.
  BitState encode(std::span<const NodeId> nodes) const;

  std::uint64_t down_m_calls() const noexcept { return down_m_calls_; }
  BitState leaf_state() const;

 private:
  const AugmentedPattern* pattern_;
  MicroForest forest_;
  std::vector<const ChildTableCache::Table*> tables_;
  mutable std::uint64_t down_m_calls_ = 0;
};

template <typename F>
void BitparPattern::for_each_leaf(const BitState& state, F&& f) const {
  for (std::size_t m = 0; m < forest_.micros.size(); ++m) {
    const MicroTree& mt = forest_.micros[m];
    for (Word w = state.words[m] & mt.leaf_mask; w; w &= w - 1)
      f(pattern_->pseudo_number(mt.nodes[static_cast<std::size_t>(std::countr_zero(w))]));
  }
}

/// Called once per target node with the state computed for it.
using BitparObserver = std::function<void(NodeId y, const BitState& state)>;

/// Heavy-path traversal: light children first, then the heavy child, whose
/// state replaces the parent's. Uses an explicit stack; at most
/// light_depth(y) + 2 states are alive at any time.
MatchSet visit(const BitparPattern& pattern, const LabeledTree& target, const HeavyPathInfo& heavy,
               BitparStats* stats = nullptr, const BitparObserver& observer = {});

/// Pattern and target must share one LabelTable.
MatchSet solve_bitpar(const AugmentedPattern& pattern, const LabeledTree& target,
                      const BitparOptions& options = {}, BitparStats* stats = nullptr,
                      const BitparObserver& observer = {});

}  // namespace tps
