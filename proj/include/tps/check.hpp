#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tps/generator.hpp"
#include "tps/match_set.hpp"
#include "tps/tree.hpp"

namespace tps {

struct Instance {
  LabeledTree pattern;
  LabeledTree target;
  std::size_t micro_size = 0;  // 0: solver default
};

/// Derived per-iteration seed (splitmix64 step).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Random shapes from {path, star, random, complete-binary, caterpillar},
/// alphabet from {1, 2, 4, 16}, sizes uniform in [1, max_nodes], micro size
/// either automatic or uniform in [2, 8].
Instance random_instance(std::uint64_t seed, std::size_t max_nodes);

/// Solvers over unranked input trees.
using SolverFn = std::function<MatchSet(const LabeledTree& pattern, const LabeledTree& target,
                                        std::size_t micro_size)>;
struct SolverSet {
  SolverFn naive;
  SolverFn dict;
  SolverFn bitpar;
  static SolverSet defaults();
};

/// Cross-solver equality plus every module invariant checker on one
/// instance. Returns a description of the first problem found.
std::optional<std::string> check_instance(const Instance& instance, const SolverSet& solvers);

/// Copy of `tree` without leaf `v` (v must not be the root).
LabeledTree remove_leaf(const LabeledTree& tree, NodeId v);

/// Repeatedly deletes single leaves from either tree while `still_fails`
/// holds.
Instance shrink(Instance instance, const std::function<bool(const Instance&)>& still_fails);

struct CheckConfig {
  std::size_t iterations = 1000;
  std::size_t max_nodes = 200;
  std::uint64_t seed = 1;
};

struct CheckFailure {
  std::size_t iteration;
  std::uint64_t seed;  // reproduces the instance via random_instance(seed, max_nodes)
  std::string reason;
  Instance minimized;
};

struct CheckReport {
  std::size_t instances = 0;
  std::vector<CheckFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Stops at the first failing instance after shrinking it.
CheckReport run_check(const CheckConfig& config, const SolverSet& solvers = SolverSet::defaults(),
                      std::ostream* log = nullptr);

}  // namespace tps
