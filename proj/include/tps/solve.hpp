#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "tps/bitpar_solver.hpp"
#include "tps/dict_solver.hpp"
#include "tps/match_set.hpp"
#include "tps/query_trie.hpp"
#include "tps/tree.hpp"

namespace tps {

enum class Algo { kNaive, kDict, kBitpar };

std::optional<Algo> parse_algo(std::string_view name);
std::string_view algo_name(Algo algo);

struct SolveStats {
  DictStats dict;
  BitparStats bitpar;
};

/// Ranks both trees over a shared label table, augments the pattern and runs
/// the chosen solver. Inputs may be unranked (labels are taken from text).
MatchSet solve(Algo algo, const LabeledTree& pattern, const LabeledTree& target,
               SolveStats* stats = nullptr, const BitparOptions& options = {});

/// (query index, target leaf) pairs, 1-based query indices, sorted. Queries
/// are split with shard_queries and each shard is answered through one trie.
std::vector<std::pair<std::size_t, std::uint32_t>> solve_queries(Algo algo, const std::vector<Query>& queries,
                                                                  const LabeledTree& target);

}  // namespace tps
