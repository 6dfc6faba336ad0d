#include "tps/solve.hpp"

#include <algorithm>

#include "tps/naive.hpp"

namespace tps {

std::optional<Algo> parse_algo(std::string_view name) {
  if (name == "naive") return Algo::kNaive;
  if (name == "dict") return Algo::kDict;
  if (name == "bitpar") return Algo::kBitpar;
  return std::nullopt;
}

std::string_view algo_name(Algo algo) {
  switch (algo) {
    case Algo::kNaive: return "naive";
    case Algo::kDict: return "dict";
    case Algo::kBitpar: return "bitpar";
  }
  return "?";
}

MatchSet solve(Algo algo, const LabeledTree& pattern, const LabeledTree& target, SolveStats* stats,
               const BitparOptions& options) {
  const RankedPair ranked = rank_labels(pattern, target);
  if (algo == Algo::kNaive) return solve_naive(ranked.pattern, ranked.target);
  const AugmentedPattern aug = add_pseudo_leaves(ranked.pattern);
  if (algo == Algo::kDict) return solve_dict(aug, ranked.target, stats ? &stats->dict : nullptr);
  return solve_bitpar(aug, ranked.target, options, stats ? &stats->bitpar : nullptr);
}

std::vector<std::pair<std::size_t, std::uint32_t>> solve_queries(Algo algo, const std::vector<Query>& queries,
                                                                  const LabeledTree& target) {
  std::vector<std::pair<std::size_t, std::uint32_t>> hits;
  for (const auto& shard : shard_queries(queries)) {
    std::vector<Query> group;
    for (std::size_t q : shard) group.push_back(queries[q]);
    const QueryTrie trie = build_trie(group);
    for (const auto& [i, j] : solve(algo, trie.tree, target))
      for (std::size_t q : trie.queries_of_leaf(i)) hits.emplace_back(shard[q] + 1, j);
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

}  // namespace tps
