#include "tps/check.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "tps/bitpar_solver.hpp"
#include "tps/dict_solver.hpp"
#include "tps/naive.hpp"
#include "tps/parse.hpp"
#include "tps/solve.hpp"

namespace tps {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Instance random_instance(std::uint64_t seed, std::size_t max_nodes) {
  static constexpr Shape kShapes[] = {Shape::kPath, Shape::kStar, Shape::kRandom, Shape::kCompleteBinary,
                                      Shape::kCaterpillar};
  static constexpr std::size_t kAlphabets[] = {1, 2, 4, 16};
  std::mt19937_64 rng(seed);
  const std::size_t alphabet = kAlphabets[uniform_below(rng, 4)];
  auto spec = [&] {
    GenSpec g;
    g.shape = kShapes[uniform_below(rng, 5)];
    g.nodes = 1 + uniform_below(rng, std::max<std::size_t>(max_nodes, 1));
    g.alphabet = alphabet;
    g.seed = rng();
    return g;
  };
  Instance inst;
  inst.pattern = generate_tree(spec());
  inst.target = generate_tree(spec());
  inst.micro_size = uniform_below(rng, 2) ? 0 : 2 + uniform_below(rng, 7);
  return inst;
}

SolverSet SolverSet::defaults() {
  SolverSet s;
  s.naive = [](const LabeledTree& p, const LabeledTree& t, std::size_t) { return solve(Algo::kNaive, p, t); };
  s.dict = [](const LabeledTree& p, const LabeledTree& t, std::size_t) { return solve(Algo::kDict, p, t); };
  s.bitpar = [](const LabeledTree& p, const LabeledTree& t, std::size_t micro_size) {
    BitparOptions o;
    o.micro_size = micro_size;
    return solve(Algo::kBitpar, p, t, nullptr, o);
  };
  return s;
}

namespace {

std::string describe(const MatchSet& m) {
  std::string out = "{";
  for (const auto& [i, j] : m) {
    if (out.size() > 1) out += ",";
    out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return out + "}";
}

std::optional<std::string> check_antichain(const LabeledTree& p, const std::vector<NodeId>& state) {
  const std::unordered_set<NodeId> members(state.begin(), state.end());
  for (NodeId x : state)
    for (NodeId v = x; v != p.root();) {
      v = p.parent(v);
      if (members.count(v)) return "node " + std::to_string(v) + " and its descendant " + std::to_string(x) + " share a state";
    }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> check_instance(const Instance& inst, const SolverSet& solvers) {
  for (const LabeledTree* t : {&inst.pattern, &inst.target})
    if (auto v = find_violation(*t)) return "input tree invalid: " + *v;

  const MatchSet naive = solvers.naive(inst.pattern, inst.target, inst.micro_size);
  const MatchSet dict = solvers.dict(inst.pattern, inst.target, inst.micro_size);
  const MatchSet bitpar = solvers.bitpar(inst.pattern, inst.target, inst.micro_size);
  if (dict != naive) return "dict " + describe(dict) + " != naive " + describe(naive);
  if (bitpar != naive) return "bitpar " + describe(bitpar) + " != naive " + describe(naive);

  const RankedPair ranked = rank_labels(inst.pattern, inst.target);
  const AugmentedPattern aug = add_pseudo_leaves(ranked.pattern);
  const LabeledTree& p = aug.tree;
  const LabeledTree& t = ranked.target;
  if (auto v = find_violation(p)) return "augmented pattern invalid: " + *v;
  for (NodeId leaf : ranked.pattern.leaves()) {
    const auto kids = p.children(leaf);
    if (kids.size() != 1 || p.label(kids[0]) != kPseudoLabel) return "leaf without a single pseudo-leaf child";
  }

  // Dict states, checked and recorded per target node.
  const std::size_t l_p = aug.original_leaves;
  std::vector<std::vector<NodeId>> states(t.size());
  std::optional<std::string> problem;
  DictStats dstats;
  solve_dict(aug, t, &dstats, [&](NodeId y, const DictState& st) {
    if (problem) return;
    auto cur = st.current();
    if (cur.size() > 2 * l_p) problem = "state larger than 2 l_P at target node " + std::to_string(y);
    else if (auto a = check_antichain(p, cur)) problem = "antichain violated: " + *a;
    else if (auto e = st.check_links(); !e.empty()) problem = "node dictionary: " + e;
    else if (st.displaced_size() > p.size()) problem = "displaced set larger than n_P + l_P";
    else {
      const auto ty = label_path(t, y);
      for (NodeId x : cur) {
        if (x == p.root()) continue;
        const auto px = label_path(p, p.parent(x));
        if (!is_subsequence<LabelId>(px, ty)) {
          problem = "state node " + std::to_string(x) + " unsound at target node " + std::to_string(y);
          break;
        }
      }
    }
    states[y] = std::move(cur);
  });
  if (problem) return problem;
  if (dstats.max_path_insertions > 1) return "a pattern node entered X^c twice on one target path";

  const std::size_t s = inst.micro_size ? inst.micro_size
                                        : std::min(choose_s(t.size(), kWordBits, TableMode::kLazy), kMaxTableBits);
  ChildTableCache cache;
  const BitparPattern bp(aug, s, cache);
  if (auto v = check_decomposition(p, bp.forest())) return "micro decomposition: " + *v;
  BitparStats bstats;
  const MatchSet visited = visit(bp, t, heavy_decompose(t), &bstats, [&](NodeId y, const BitState& st) {
    if (problem) return;
    if (bp.decode(st) != states[y]) problem = "bit state differs from set state at target node " + std::to_string(y);
  });
  if (problem) return problem;
  if (visited != naive) return "visit " + describe(visited) + " != naive " + describe(naive);
  if (bstats.down_m_calls != bstats.down_global_calls * bp.forest().micros.size())
    return "down_m call count is not |micros| per down_global";
  if (bstats.max_live_states > floor_log2(t.size()) + 2) return "too many live states";
  return std::nullopt;
}

LabeledTree remove_leaf(const LabeledTree& tree, NodeId v) {
  if (v == tree.root() || !tree.is_leaf(v)) throw std::invalid_argument("can only remove a non-root leaf");
  TreeBuilder b;
  std::vector<NodeId> remap(tree.size(), kNoNode);
  for (NodeId u = 0; u < tree.size(); ++u) {
    if (u == v) continue;
    remap[u] = u == tree.root() ? b.add_root(tree.text(u)) : b.add_child(remap[tree.parent(u)], tree.text(u));
  }
  return std::move(b).build();
}

Instance shrink(Instance inst, const std::function<bool(const Instance&)>& still_fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (int which = 0; which < 2 && !progress; ++which) {
      const LabeledTree& tree = which == 0 ? inst.pattern : inst.target;
      for (NodeId leaf : tree.leaves()) {
        if (leaf == tree.root()) continue;
        Instance candidate = inst;
        (which == 0 ? candidate.pattern : candidate.target) = remove_leaf(tree, leaf);
        if (still_fails(candidate)) {
          inst = std::move(candidate);
          progress = true;
          break;
        }
      }
    }
  }
  return inst;
}

CheckReport run_check(const CheckConfig& config, const SolverSet& solvers, std::ostream* log) {
  CheckReport report;
  for (std::size_t it = 0; it < config.iterations; ++it) {
    const std::uint64_t seed = mix_seed(config.seed, it);
    Instance inst = random_instance(seed, config.max_nodes);
    ++report.instances;
    auto safe_check = [&](const Instance& candidate) -> std::optional<std::string> {
      try {
        return check_instance(candidate, solvers);
      } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
      }
    };
    auto reason = safe_check(inst);
    if (!reason) continue;
    Instance small = shrink(inst, [&](const Instance& c) { return safe_check(c).has_value(); });
    const auto final_reason = safe_check(small).value_or(*reason);
    if (log) {
      *log << "FAIL iteration " << it << " seed " << seed << ": " << final_reason << '\n'
           << "  pattern: " << format_tree(small.pattern) << '\n'
           << "  target:  " << format_tree(small.target) << '\n'
           << "  micro size: " << small.micro_size << '\n';
    }
    report.failures.push_back({it, seed, final_reason, std::move(small)});
    break;
  }
  if (log && report.ok()) *log << "ok: " << report.instances << " instances, no discrepancies\n";
  return report;
}

}  // namespace tps
