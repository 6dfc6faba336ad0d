#include "tps/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace tps {

NodeId TreeBuilder::add_root(std::string text, LabelId label) {
  if (root_ != kNoNode) throw std::logic_error("tree already has a root");
  root_ = static_cast<NodeId>(parent_.size());
  parent_.push_back(kNoNode);
  children_.emplace_back();
  text_.push_back(std::move(text));
  label_.push_back(label);
  return root_;
}

NodeId TreeBuilder::add_child(NodeId parent, std::string text, LabelId label) {
  if (parent >= parent_.size()) throw std::out_of_range("unknown parent node");
  const auto id = static_cast<NodeId>(parent_.size());
  parent_.push_back(parent);
  children_.emplace_back();
  children_[parent].push_back(id);
  text_.push_back(std::move(text));
  label_.push_back(label);
  return id;
}

LabeledTree TreeBuilder::build() && {
  if (root_ == kNoNode) throw std::logic_error("tree has no root");
  LabeledTree t;
  const std::size_t n = parent_.size();
  t.root_ = root_;
  t.parent_ = std::move(parent_);
  t.text_ = std::move(text_);
  t.label_ = std::move(label_);
  t.ranked_ = std::none_of(t.label_.begin(), t.label_.end(),
                           [](LabelId l) { return l == kUnranked; });
  t.child_begin_.resize(n + 1);
  t.child_list_.reserve(n ? n - 1 : 0);
  for (std::size_t v = 0; v < n; ++v) {
    t.child_begin_[v] = static_cast<std::uint32_t>(t.child_list_.size());
    t.child_list_.insert(t.child_list_.end(), children_[v].begin(), children_[v].end());
  }
  t.child_begin_[n] = static_cast<std::uint32_t>(t.child_list_.size());
  children_.clear();
  t.finalize();
  return t;
}

void LabeledTree::finalize() {
  const std::size_t n = parent_.size();
  preorder_.clear();
  preorder_.reserve(n);
  preorder_rank_.assign(n, 0);
  leaf_number_.assign(n, 0);
  leaves_.clear();
  depth_.assign(n, 0);
  height_ = 0;

  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    preorder_rank_[v] = static_cast<std::uint32_t>(preorder_.size());
    preorder_.push_back(v);
    if (v != root_) depth_[v] = depth_[parent_[v]] + 1;
    height_ = std::max(height_, depth_[v]);
    const auto kids = children(v);
    if (kids.empty()) {
      leaves_.push_back(v);
      leaf_number_[v] = static_cast<std::uint32_t>(leaves_.size());
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
}

LabeledTree LabeledTree::with_labels(std::vector<LabelId> labels) const {
  if (labels.size() != size()) throw std::invalid_argument("label count does not match node count");
  LabeledTree t = *this;
  t.label_ = std::move(labels);
  t.ranked_ = std::none_of(t.label_.begin(), t.label_.end(),
                           [](LabelId l) { return l == kUnranked; });
  return t;
}

std::optional<std::string> find_violation(const LabeledTree& t) {
  const std::size_t n = t.size();
  if (n == 0) return "empty tree";
  if (t.root_ >= n) return "root out of range";
  if (t.child_begin_.size() != n + 1 || t.text_.size() != n || t.label_.size() != n)
    return "per-node arrays have inconsistent sizes";

  std::size_t roots = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (t.parent_[v] == kNoNode) {
      ++roots;
      if (v != t.root_) return "parentless node " + std::to_string(v) + " is not the root";
      continue;
    }
    if (t.parent_[v] >= n) return "parent of node " + std::to_string(v) + " out of range";
    const auto siblings = t.children(t.parent_[v]);
    if (std::count(siblings.begin(), siblings.end(), v) != 1)
      return "node " + std::to_string(v) + " missing from its parent's children";
  }
  if (roots != 1) return "expected exactly one parentless node";
  for (NodeId v = 0; v < n; ++v)
    for (NodeId c : t.children(v))
      if (c >= n || t.parent_[c] != v)
        return "child " + std::to_string(c) + " does not point back to " + std::to_string(v);

  // Preorder: permutation, and a depth-first left-to-right traversal.
  if (t.preorder_.size() != n) return "preorder does not cover every node (cycle or disconnected)";
  std::vector<bool> seen(n, false);
  for (std::uint32_t r = 0; r < n; ++r) {
    const NodeId v = t.preorder_[r];
    if (v >= n || seen[v]) return "preorder is not a permutation";
    seen[v] = true;
    if (t.preorder_rank_[v] != r) return "preorder rank mismatch at rank " + std::to_string(r);
  }
  if (t.preorder_[0] != t.root_) return "preorder does not start at the root";
  {
    std::vector<NodeId> stack{t.root_};
    std::uint32_t r = 0;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      if (t.preorder_[r++] != v) return "preorder is not depth-first left-to-right";
      const auto kids = t.children(v);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
  }

  std::uint32_t expected = 0;
  std::uint32_t last_rank = 0;
  for (std::uint32_t i = 1; i <= t.leaves_.size(); ++i) {
    const NodeId v = t.leaves_[i - 1];
    if (!t.is_leaf(v)) return "leaf list contains internal node " + std::to_string(v);
    if (t.leaf_number_[v] != i) return "leaf number mismatch for node " + std::to_string(v);
    if (i > 1 && t.preorder_rank_[v] <= last_rank) return "leaves not in increasing preorder";
    last_rank = t.preorder_rank_[v];
  }
  for (NodeId v = 0; v < n; ++v) {
    if (t.is_leaf(v)) ++expected;
    else if (t.leaf_number_[v] != 0) return "internal node carries a leaf number";
  }
  if (expected != t.leaves_.size()) return "leaf list does not cover all childless nodes";
  return std::nullopt;
}

LabelTable::LabelTable(std::vector<std::string> texts) {
  backward_.reserve(texts.size() + 1);
  backward_.emplace_back(kPseudoText);
  for (auto& s : texts) {
    const auto id = LabelId{static_cast<std::uint32_t>(backward_.size())};
    if (!forward_.emplace(s, id).second) throw std::invalid_argument("duplicate label text: " + s);
    backward_.push_back(std::move(s));
  }
}

std::optional<LabelId> LabelTable::find(std::string_view text) const {
  const auto it = forward_.find(std::string(text));
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

RankedPair rank_labels(const LabeledTree& pattern, const LabeledTree& target) {
  std::vector<std::string> texts;
  texts.reserve(pattern.size() + target.size());
  for (NodeId v = 0; v < pattern.size(); ++v) texts.push_back(pattern.text(v));
  for (NodeId v = 0; v < target.size(); ++v) texts.push_back(target.text(v));
  std::sort(texts.begin(), texts.end());
  texts.erase(std::unique(texts.begin(), texts.end()), texts.end());

  LabelTable table(std::move(texts));
  auto relabel = [&](const LabeledTree& t) {
    std::vector<LabelId> ids(t.size());
    for (NodeId v = 0; v < t.size(); ++v) ids[v] = *table.find(t.text(v));
    return t.with_labels(std::move(ids));
  };
  return {relabel(pattern), relabel(target), std::move(table)};
}

AugmentedPattern add_pseudo_leaves(const LabeledTree& pattern) {
  if (!pattern.ranked()) throw std::invalid_argument("pattern must be ranked before augmentation");
  TreeBuilder b;
  const std::size_t n = pattern.size();
  // Builder-made arenas always place a parent before its children, so
  // replaying them in id order reproduces the original ids.
  for (NodeId v = 0; v < n; ++v) {
    if (v == pattern.root()) b.add_root(pattern.text(v), pattern.label(v));
    else b.add_child(pattern.parent(v), pattern.text(v), pattern.label(v));
  }
  for (std::uint32_t i = 1; i <= pattern.leaf_count(); ++i)
    b.add_child(pattern.leaf(i), std::string(kPseudoText), kPseudoLabel);

  AugmentedPattern out;
  out.tree = std::move(b).build();
  out.original_size = n;
  out.original_leaves = pattern.leaf_count();
  return out;
}

std::vector<std::vector<std::string>> root_to_leaf_paths(const LabeledTree& tree) {
  std::vector<std::vector<std::string>> out;
  out.reserve(tree.leaf_count());
  for (NodeId leaf : tree.leaves()) {
    std::vector<std::string> path(tree.depth(leaf) + 1);
    for (NodeId v = leaf;; v = tree.parent(v)) {
      path[tree.depth(v)] = tree.text(v);
      if (v == tree.root()) break;
    }
    out.push_back(std::move(path));
  }
  return out;
}

std::vector<LabelId> label_path(const LabeledTree& tree, NodeId v) {
  std::vector<LabelId> path(tree.depth(v) + 1);
  for (;; v = tree.parent(v)) {
    path[tree.depth(v)] = tree.label(v);
    if (v == tree.root()) break;
  }
  return path;
}

}  // namespace tps
