#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tps/tree.hpp"

namespace tps {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = std::numeric_limits<Word>::digits;
/// Largest micro tree for which a full child table (2^size words) is built.
inline constexpr std::size_t kMaxTableBits = 20;
inline constexpr std::size_t kNoMicro = std::numeric_limits<std::size_t>::max();

/// Connected piece of the pattern with at most s nodes. Bit i of every
/// mask is the i-th node of the piece in preorder; bit 0 is its root.
struct MicroTree {
  std::vector<NodeId> nodes;
  std::string topology;            // balanced parentheses, one pair per node
  std::vector<Word> child_masks;   // local children of each local node
  std::unordered_map<LabelId, Word> eq;
  Word leaf_mask = 0;              // pseudo-leaves
  std::size_t parent = kNoMicro;
  std::uint32_t root_slot = 0;     // slot of our root inside the parent micro tree
  std::vector<std::size_t> children;

  NodeId root() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }
  Word eq_mask(LabelId label) const {
    const auto it = eq.find(label);
    return it == eq.end() ? Word{0} : it->second;
  }
};

struct NodeHome {
  std::uint32_t micro;
  std::uint32_t slot;
};

/// Cover of the pattern by micro trees that overlap only at micro roots.
/// Parents precede children in `micros`. A node shared by several micro
/// trees is owned (`home`) by the one where it is not the root.
struct MicroForest {
  std::size_t s = 0;
  std::vector<MicroTree> micros;
  std::vector<std::size_t> roots;  // micro trees rooted at root(P)
  std::vector<NodeHome> home;
};

/// Bottom-up greedy clustering. Pending pieces hanging below a node are
/// packed left to right; a piece closes (rooted at that node) when the next
/// child piece would push it past s nodes, or once it holds at least s/2
/// non-root nodes. Pieces still open at a node carry at most s/2 nodes, so
/// every closed micro tree except the last one at the pattern root has at
/// least floor(s/2) non-root nodes. Throws std::invalid_argument if s < 2
/// or s exceeds the word width.
MicroForest micro_decompose(const AugmentedPattern& pattern, std::size_t s);
/// Same clustering for a tree without pseudo-leaves (empty leaf masks).
MicroForest micro_decompose(const LabeledTree& tree, std::size_t s);

/// Coverage, pairwise overlap only at a root, size <= s, count bound
/// 4 * ceil(n/s), local-structure consistency.
std::optional<std::string> check_decomposition(const LabeledTree& tree, const MicroForest& forest);

enum class TableMode { kLazy, kEager };

/// s used by the bit-parallel solver for a target of n_t nodes.
/// Lazy: max(2, min(word_bits, floor(log2(n_t + 1)))). Eager additionally
/// caps s so that s * 2^(3s) <= n_t (never below 2).
std::size_t choose_s(std::size_t n_t, std::size_t word_bits, TableMode mode);

/// Child tables keyed by topology: entry X holds the local children of the
/// nodes in mask X. Tables are built once per shape and shared; first
/// builds are serialized, lookups of built tables may run concurrently.
class ChildTableCache {
 public:
  using Table = std::vector<Word>;

  explicit ChildTableCache(TableMode mode = TableMode::kLazy) : mode_(mode) {}

  TableMode mode() const noexcept { return mode_; }

  /// Lazy mode builds on first use; eager mode requires a prior prebuild.
  const Table& table(const MicroTree& m);
  const Table* find(std::string_view topology) const;

  /// Builds tables for every ordered rooted shape with at most s nodes.
  void prebuild(std::size_t s);
  /// Installs (or replaces) the table for a shape.
  void install(std::string topology, Table table);

  std::size_t shapes() const;
  std::size_t builds() const;

  static Table build_table(std::span<const Word> child_masks);
  static std::vector<Word> child_masks_of(std::string_view topology);

 private:
  TableMode mode_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::unique_ptr<Table>> tables_;
  std::size_t builds_ = 0;
};

/// Down restricted to one micro tree:
///   Child(x & eq) | (x & ~eq) | (b ? root : 0)
inline Word down_m(const MicroTree& m, const ChildTableCache::Table& child_table, Word x, bool b,
                   LabelId label) {
  const Word eq = m.eq_mask(label);
  return child_table[x & eq] | (x & ~eq) | Word{b};
}

inline Word down_m(const MicroTree& m, Word x, bool b, LabelId label, ChildTableCache& cache) {
  return down_m(m, cache.table(m), x, b, label);
}

}  // namespace tps
