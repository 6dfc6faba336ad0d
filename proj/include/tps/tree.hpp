#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tps {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Rank of a label in the sorted union of both trees' labels.
/// Rank 0 is reserved for the pseudo-leaf label.
enum class LabelId : std::uint32_t {};

inline constexpr LabelId kPseudoLabel{0};
inline constexpr LabelId kUnranked{std::numeric_limits<std::uint32_t>::max()};
inline constexpr std::string_view kPseudoText = "\xE2\x8A\xA5";  // "⊥"

constexpr std::uint32_t rank_of(LabelId id) noexcept {
  return static_cast<std::uint32_t>(id);
}

class TreeBuilder;

/// Arena-stored rooted ordered tree with text labels and (after ranking)
/// integer label ids. Immutable once built.
///
/// Node ids are arena indices. Preorder ranks and leaf numbers are kept as
/// separate bijections; leaves are numbered 1..l in increasing preorder.
class LabeledTree {
 public:
  LabeledTree() = default;

  std::size_t size() const noexcept { return parent_.size(); }
  bool empty() const noexcept { return parent_.empty(); }
  NodeId root() const noexcept { return root_; }

  NodeId parent(NodeId v) const { return parent_[v]; }
  std::span<const NodeId> children(NodeId v) const {
    return {child_list_.data() + child_begin_[v],
            child_list_.data() + child_begin_[v + 1]};
  }
  bool is_leaf(NodeId v) const { return child_begin_[v] == child_begin_[v + 1]; }

  const std::string& text(NodeId v) const { return text_[v]; }
  LabelId label(NodeId v) const { return label_[v]; }
  bool ranked() const noexcept { return ranked_; }

  std::uint32_t preorder_rank(NodeId v) const { return preorder_rank_[v]; }
  NodeId at_preorder(std::uint32_t rank) const { return preorder_[rank]; }
  std::span<const NodeId> preorder() const { return preorder_; }

  std::size_t leaf_count() const noexcept { return leaves_.size(); }
  /// 1-based leaf number, 0 for internal nodes.
  std::uint32_t leaf_number(NodeId v) const { return leaf_number_[v]; }
  /// Node of the 1-based leaf number `i`.
  NodeId leaf(std::uint32_t i) const { return leaves_[i - 1]; }
  std::span<const NodeId> leaves() const { return leaves_; }

  std::uint32_t depth(NodeId v) const { return depth_[v]; }
  std::uint32_t height() const noexcept { return height_; }

  /// Copy of this tree with every node relabeled; shape unchanged.
  LabeledTree with_labels(std::vector<LabelId> labels) const;

 private:
  friend class TreeBuilder;
  friend std::optional<std::string> find_violation(const LabeledTree&);

  void finalize();

  NodeId root_ = kNoNode;
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> child_begin_;
  std::vector<NodeId> child_list_;
  std::vector<std::string> text_;
  std::vector<LabelId> label_;
  bool ranked_ = false;
  std::vector<std::uint32_t> preorder_rank_;
  std::vector<NodeId> preorder_;
  std::vector<std::uint32_t> leaf_number_;
  std::vector<NodeId> leaves_;
  std::vector<std::uint32_t> depth_;
  std::uint32_t height_ = 0;
};

/// Incremental construction. Children keep insertion order.
class TreeBuilder {
 public:
  NodeId add_root(std::string text, LabelId label = kUnranked);
  NodeId add_child(NodeId parent, std::string text, LabelId label = kUnranked);
  std::size_t size() const noexcept { return parent_.size(); }

  /// Throws std::logic_error if no root was added.
  LabeledTree build() &&;

 private:
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::string> text_;
  std::vector<LabelId> label_;
  NodeId root_ = kNoNode;
};

/// Returns a description of the first broken structural invariant, if any.
std::optional<std::string> find_violation(const LabeledTree& tree);

class LabelTable {
 public:
  LabelTable() : LabelTable(std::vector<std::string>{}) {}
  /// `texts` must be sorted and duplicate-free; they receive ranks 1..k.
  explicit LabelTable(std::vector<std::string> texts);

  std::optional<LabelId> find(std::string_view text) const;
  const std::string& text(LabelId id) const { return backward_[rank_of(id)]; }
  /// Number of ids including the pseudo label.
  std::size_t size() const noexcept { return backward_.size(); }

 private:
  std::unordered_map<std::string, LabelId> forward_;
  std::vector<std::string> backward_;
};

struct RankedPair {
  LabeledTree pattern;
  LabeledTree target;
  LabelTable labels;
};

/// Relabels both trees with dense ranks over the byte-sorted union of their
/// label strings. Ranks start at 1.
RankedPair rank_labels(const LabeledTree& pattern, const LabeledTree& target);

/// The pattern with one pseudo-leaf appended under every original leaf.
/// Original node ids are preserved; pseudo-leaves take ids n_P..n_P+l_P-1.
struct AugmentedPattern {
  LabeledTree tree;
  std::size_t original_size = 0;
  std::size_t original_leaves = 0;

  bool is_pseudo(NodeId v) const { return v >= original_size; }
  /// Original leaf number carried by pseudo-leaf `v`.
  std::uint32_t pseudo_number(NodeId v) const {
    return static_cast<std::uint32_t>(v - original_size + 1);
  }
  /// Pseudo-leaf under original leaf number `i`.
  NodeId pseudo_leaf(std::uint32_t i) const {
    return static_cast<NodeId>(original_size + i - 1);
  }
};

/// Requires a ranked pattern.
AugmentedPattern add_pseudo_leaves(const LabeledTree& pattern);

/// One root-first text-label sequence per leaf, ordered by leaf number.
std::vector<std::vector<std::string>> root_to_leaf_paths(const LabeledTree& tree);

/// Root-first label-id sequence ending at `v`.
std::vector<LabelId> label_path(const LabeledTree& tree, NodeId v);

}  // namespace tps
