#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "tps/tree.hpp"

namespace tps {

enum class Shape { kRandom, kPath, kStar, kCompleteBinary, kCaterpillar };

std::optional<Shape> parse_shape(std::string_view name);
std::string_view shape_name(Shape shape);

/// Random tree recipe. Identical specs give identical trees.
struct GenSpec {
  std::size_t nodes = 1;
  std::size_t alphabet = 1;
  Shape shape = Shape::kRandom;
  std::uint64_t seed = 0;
};

/// Label text of the k-th alphabet symbol: a..z, aa, ab, ...
std::string alphabet_label(std::size_t k);

/// Uniform integer in [0, bound) by rejection sampling, so results do not
/// depend on the standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Shapes: random attachment (node i picks a uniform parent among 0..i-1),
/// path, star, complete binary (heap order), caterpillar (a spine of
/// ceil(n/2) nodes with one leg per spine node from the top). Labels are
/// uniform over the alphabet. Throws std::invalid_argument for nodes == 0 or
/// alphabet == 0.
LabeledTree generate_tree(const GenSpec& spec);

}  // namespace tps
