#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tps/tree.hpp"

namespace tps {

using Query = std::vector<std::string>;

/// Prefix-sharing trie of path queries. Answering TPS on (trie, document)
/// and expanding leaves through `queries_at` answers every query at once.
struct QueryTrie {
  LabeledTree tree;
  /// Indexed by trie leaf number - 1; holds 0-based input query indices.
  std::vector<std::vector<std::size_t>> queries_at;
  std::size_t query_count = 0;

  const std::vector<std::size_t>& queries_of_leaf(std::uint32_t leaf) const {
    return queries_at[leaf - 1];
  }
};

/// Children are ordered by first arrival of their label. Throws
/// std::invalid_argument for an empty list, an empty query, differing first
/// labels, or a query that is a proper prefix of another (it would end at an
/// internal trie node and never be reported).
QueryTrie build_trie(const std::vector<Query>& queries);

/// Groups of query indices, each buildable into one trie: same first label,
/// no query a proper prefix of another. Groups are ordered by their first
/// member; members keep input order.
std::vector<std::vector<std::size_t>> shard_queries(const std::vector<Query>& queries);

/// One query per line, labels separated by '/'. Blank lines and lines
/// starting with '#' are skipped. Labels may be quoted as in parse_tree.
std::vector<Query> parse_queries(std::string_view text);

std::string format_query(const Query& q);

}  // namespace tps
