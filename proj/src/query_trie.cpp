#include "tps/query_trie.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "tps/parse.hpp"

namespace tps {

QueryTrie build_trie(const std::vector<Query>& queries) {
  if (queries.empty()) throw std::invalid_argument("no queries");
  for (std::size_t k = 0; k < queries.size(); ++k)
    if (queries[k].empty()) throw std::invalid_argument("query " + std::to_string(k + 1) + " is empty");
  const std::string& first = queries[0][0];
  for (std::size_t k = 1; k < queries.size(); ++k)
    if (queries[k][0] != first)
      throw std::invalid_argument("query " + std::to_string(k + 1) + " starts with '" + queries[k][0] +
                                  "', expected '" + first + "'");

  TreeBuilder b;
  const NodeId root = b.add_root(first);
  // Child lookup by (node, label); children keep first-arrival order.
  std::map<std::pair<NodeId, std::string>, NodeId> edges;
  std::vector<std::vector<std::size_t>> ending_at(1);
  std::vector<bool> has_child(1, false);
  for (std::size_t k = 0; k < queries.size(); ++k) {
    NodeId v = root;
    for (std::size_t d = 1; d < queries[k].size(); ++d) {
      auto [it, inserted] = edges.try_emplace({v, queries[k][d]}, kNoNode);
      if (inserted) {
        it->second = b.add_child(v, queries[k][d]);
        ending_at.emplace_back();
        has_child.push_back(false);
        has_child[v] = true;
      }
      v = it->second;
    }
    ending_at[v].push_back(k);
  }
  for (NodeId v = 0; v < ending_at.size(); ++v)
    if (has_child[v] && !ending_at[v].empty())
      throw std::invalid_argument("query " + std::to_string(ending_at[v].front() + 1) +
                                  " is a proper prefix of another query");

  QueryTrie out;
  out.tree = std::move(b).build();
  out.query_count = queries.size();
  out.queries_at.reserve(out.tree.leaf_count());
  for (NodeId leaf : out.tree.leaves()) out.queries_at.push_back(ending_at[leaf]);
  return out;
}

std::vector<std::vector<std::size_t>> shard_queries(const std::vector<Query>& queries) {
  std::vector<std::string> first_labels;
  std::map<std::string, std::vector<std::size_t>> by_first;
  for (std::size_t k = 0; k < queries.size(); ++k) {
    if (queries[k].empty()) throw std::invalid_argument("query " + std::to_string(k + 1) + " is empty");
    auto& bucket = by_first[queries[k][0]];
    if (bucket.empty()) first_labels.push_back(queries[k][0]);
    bucket.push_back(k);
  }

  std::vector<std::vector<std::size_t>> shards;
  for (const auto& label : first_labels) {
    auto members = by_first[label];
    // Longest first, so a query can only collide by being a prefix of an
    // already placed one.
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return queries[a].size() > queries[b].size();
    });
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::set<Query>> proper_prefixes;
    for (std::size_t k : members) {
      std::size_t g = 0;
      while (g < groups.size() && proper_prefixes[g].count(queries[k])) ++g;
      if (g == groups.size()) {
        groups.emplace_back();
        proper_prefixes.emplace_back();
      }
      groups[g].push_back(k);
      for (std::size_t len = 1; len < queries[k].size(); ++len)
        proper_prefixes[g].emplace(queries[k].begin(), queries[k].begin() + static_cast<std::ptrdiff_t>(len));
    }
    for (auto& g : groups) {
      std::sort(g.begin(), g.end());
      shards.push_back(std::move(g));
    }
  }
  std::sort(shards.begin(), shards.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return shards;
}

std::vector<Query> parse_queries(std::string_view text) {
  std::vector<Query> out;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    const std::size_t base = line_start;
    line_start = line_end + 1;

    std::size_t a = 0, e = line.size();
    while (a < e && (line[a] == ' ' || line[a] == '\t' || line[a] == '\r')) ++a;
    while (e > a && (line[e - 1] == ' ' || line[e - 1] == '\t' || line[e - 1] == '\r')) --e;
    line = line.substr(a, e - a);
    if (line.empty() || line[0] == '#') continue;

    Query q;
    std::size_t i = line[0] == '/' ? 1 : 0;
    for (;;) {
      std::string label;
      const std::size_t seg = i;
      if (i < line.size() && line[i] == '"') {
        ++i;
        bool closed = false;
        while (i < line.size()) {
          const char c = line[i++];
          if (c == '"') {
            closed = true;
            break;
          }
          if (c == '\\' && i < line.size()) label.push_back(line[i++]);
          else label.push_back(c);
        }
        if (!closed) throw ParseError("unterminated quoted label", base + a + seg);
        if (i < line.size() && line[i] != '/') throw ParseError("expected '/' after quoted label", base + a + i);
      } else {
        while (i < line.size() && line[i] != '/') label.push_back(line[i++]);
        while (!label.empty() && (label.back() == ' ' || label.back() == '\t')) label.pop_back();
        const auto lead = label.find_first_not_of(" \t");
        label.erase(0, lead == std::string::npos ? label.size() : lead);
        if (label.empty()) throw ParseError("empty label in query", base + a + seg);
      }
      q.push_back(std::move(label));
      if (i >= line.size()) break;
      ++i;  // '/'
      if (i >= line.size()) throw ParseError("trailing '/' in query", base + a + i - 1);
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::string format_query(const Query& q) {
  std::string out;
  for (std::size_t d = 0; d < q.size(); ++d) {
    if (d) out.push_back('/');
    out += quote_label(q[d], "/");
  }
  return out;
}

}  // namespace tps
