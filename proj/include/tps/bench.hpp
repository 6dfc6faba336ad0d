#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tps/generator.hpp"
#include "tps/query_trie.hpp"
#include "tps/solve.hpp"

namespace tps {

/// k random path queries of `length` labels, all starting with "a". The
/// pattern of the run is their trie.
struct QuerySetSpec {
  std::size_t count = 1;
  std::size_t length = 1;
  std::size_t alphabet = 1;
  std::uint64_t seed = 0;
};

std::vector<Query> generate_queries(const QuerySetSpec& spec);

/// One (pattern, target) pair run under each listed solver.
struct BenchRun {
  GenSpec pattern;
  std::optional<QuerySetSpec> queries;  // replaces `pattern` when set
  GenSpec target;
  std::vector<Algo> algos{Algo::kNaive, Algo::kDict, Algo::kBitpar};
  std::size_t micro_size = 0;
};

/// `work` is the solver's own operation counter: path-pair scans for naive,
/// node touches for dict, down_m calls for bitpar.
struct BenchRecord {
  std::string solver;
  std::size_t n_p = 0;
  std::size_t n_t = 0;
  std::size_t l_p = 0;
  std::size_t l_t = 0;
  double wall_ms = 0;
  std::size_t peak_live_states = 0;
  std::uint64_t work = 0;
  std::size_t match_count = 0;
  std::size_t micro_size = 0;
  std::size_t micro_count = 0;
  std::size_t queries = 0;  // k for query-set runs (l_p is then l_Q), else 0
};

inline constexpr std::string_view kBenchHeader =
    "solver,n_p,n_t,l_p,l_t,wall_ms,peak_live_states,work,match_count,micro_size,micro_count,queries";

/// JSON: {"runs": [{"pattern": {"shape": "random", "nodes": 100, "alphabet": 4,
/// "seed": 1}, "target": {...}, "algos": ["dict", "bitpar"], "micro_size": 0}]}.
/// Instead of "pattern" a run may give "queries": {"count": k, "length": 4,
/// "alphabet": 3, "seed": 1}. `algos` and `micro_size` are optional. Throws
/// std::invalid_argument.
std::vector<BenchRun> parse_bench_config(std::string_view json);

BenchRecord bench_one(Algo algo, const LabeledTree& pattern, const LabeledTree& target,
                      std::size_t micro_size = 0);

/// Records in run order, algos in listed order.
std::vector<BenchRecord> run_bench(const std::vector<BenchRun>& runs);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace tps
