#include "tps/bitpar_solver.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tps {

BitparPattern::BitparPattern(const AugmentedPattern& pattern, std::size_t s, ChildTableCache& cache)
    : pattern_(&pattern), forest_(micro_decompose(pattern, s)) {
  if (!pattern.tree.ranked()) throw std::invalid_argument("pattern must be ranked");
  tables_.reserve(forest_.micros.size());
  for (const MicroTree& m : forest_.micros) tables_.push_back(&cache.table(m));
}

BitState BitparPattern::initial_state() const {
  BitState st;
  st.words.assign(forest_.micros.size(), 0);
  for (std::size_t m : forest_.roots) st.words[m] = 1;
  return st;
}

void BitparPattern::down_global(const BitState& in, BitState& out, LabelId label) const {
  const auto& micros = forest_.micros;
  out.words.resize(micros.size());
  for (std::size_t m = 0; m < micros.size(); ++m) {
    const MicroTree& mt = micros[m];
    const bool b = mt.parent != kNoMicro && ((out.words[mt.parent] >> mt.root_slot) & 1);
    out.words[m] = down_m(mt, *tables_[m], in.words[m], b, label);
    ++down_m_calls_;
  }
}

std::vector<std::uint32_t> BitparPattern::report_leaves(const BitState& state) const {
  std::vector<std::uint32_t> out;
  for_each_leaf(state, [&](std::uint32_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> BitparPattern::decode(const BitState& state) const {
  std::vector<NodeId> out;
  for (std::size_t m = 0; m < forest_.micros.size(); ++m) {
    const MicroTree& mt = forest_.micros[m];
    Word w = state.words[m];
    // A micro root is owned elsewhere, except root(P) which the first root
    // micro tree owns.
    if (m != forest_.roots.front()) w &= ~Word{1};
    for (; w; w &= w - 1) out.push_back(mt.nodes[static_cast<std::size_t>(std::countr_zero(w))]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BitState BitparPattern::encode(std::span<const NodeId> nodes) const {
  BitState st;
  st.words.assign(forest_.micros.size(), 0);
  for (NodeId v : nodes) {
    const NodeHome h = forest_.home[v];
    st.words[h.micro] |= Word{1} << h.slot;
  }
  // Mirror owner bits into micro roots.
  for (std::size_t m = 0; m < forest_.micros.size(); ++m) {
    const MicroTree& mt = forest_.micros[m];
    const bool set = mt.parent == kNoMicro ? (st.words[forest_.roots.front()] & 1)
                                           : ((st.words[mt.parent] >> mt.root_slot) & 1);
    if (set) st.words[m] |= 1;
  }
  return st;
}

BitState BitparPattern::leaf_state() const {
  BitState st;
  st.words.reserve(forest_.micros.size());
  for (const MicroTree& mt : forest_.micros) st.words.push_back(mt.leaf_mask);
  return st;
}

MatchSet visit(const BitparPattern& bp, const LabeledTree& target, const HeavyPathInfo& heavy,
               BitparStats* stats, const BitparObserver& observer) {
  struct Frame {
    NodeId y = kNoNode;
    std::size_t next_child = 0;
    BitState state;
  };
  MatchSet out;
  std::vector<Frame> frames;  // buffers are reused; `depth` frames are live
  std::size_t depth = 0;
  std::size_t live = 0, peak = 0;
  std::uint64_t downs = 0;
  const std::uint64_t calls_before = bp.down_m_calls();
  auto grow = [&] {
    ++live;
    peak = std::max(peak, live);
  };
  auto push = [&](NodeId y) -> Frame& {
    if (depth == frames.size()) frames.emplace_back();
    Frame& f = frames[depth++];
    f.y = y;
    f.next_child = 0;
    return f;
  };

  {
    const BitState init = bp.initial_state();
    grow();
    Frame& f = push(target.root());
    bp.down_global(init, f.state, target.label(target.root()));
    ++downs;
    grow();
    --live;  // initial state discarded
    if (observer) observer(f.y, f.state);
  }

  BitState scratch;
  while (depth > 0) {
    Frame& f = frames[depth - 1];
    const NodeId y = f.y;
    if (target.is_leaf(y)) {
      const std::uint32_t j = target.leaf_number(y);
      bp.for_each_leaf(f.state, [&](std::uint32_t i) { out.add(i, j); });
      --depth;
      --live;
      continue;
    }
    const auto kids = target.children(y);
    const NodeId h = heavy.heavy_child[y];
    while (f.next_child < kids.size() && kids[f.next_child] == h) ++f.next_child;
    if (f.next_child < kids.size()) {
      const NodeId c = kids[f.next_child++];
      const std::size_t parent_index = depth - 1;
      Frame& child = push(c);  // may reallocate `frames`
      bp.down_global(frames[parent_index].state, child.state, target.label(c));
      ++downs;
      grow();
      if (observer) observer(c, child.state);
      continue;
    }
    bp.down_global(f.state, scratch, target.label(h));
    ++downs;
    grow();
    if (observer) observer(h, scratch);
    std::swap(f.state, scratch);
    f.y = h;
    f.next_child = 0;
    --live;  // X_y discarded
  }
  out.normalize();
  if (stats) {
    stats->micro_size = bp.forest().s;
    stats->micro_count = bp.forest().micros.size();
    stats->down_global_calls = downs;
    stats->down_m_calls = bp.down_m_calls() - calls_before;
    stats->max_live_states = peak;
  }
  return out;
}

MatchSet solve_bitpar(const AugmentedPattern& pattern, const LabeledTree& target,
                      const BitparOptions& options, BitparStats* stats, const BitparObserver& observer) {
  if (!target.ranked()) throw std::invalid_argument("target must be ranked");
  std::size_t s = options.micro_size;
  if (s == 0) s = std::min(choose_s(target.size(), kWordBits, options.mode), kMaxTableBits);
  if (s > kMaxTableBits)
    throw std::invalid_argument("micro tree size " + std::to_string(s) + " exceeds the child table limit of " +
                                std::to_string(kMaxTableBits));

  ChildTableCache local(options.mode);
  ChildTableCache& cache = options.cache ? *options.cache : local;
  if (cache.mode() == TableMode::kEager) {
    if (s > kMaxEagerBits)
      throw std::invalid_argument("eager child tables are limited to micro trees of " +
                                  std::to_string(kMaxEagerBits) + " nodes");
    cache.prebuild(s);
  }

  const BitparPattern bp(pattern, s, cache);
  const HeavyPathInfo heavy = heavy_decompose(target);
  MatchSet out = visit(bp, target, heavy, stats, observer);
  if (stats) stats->table_shapes = cache.shapes();
  return out;
}

}  // namespace tps
