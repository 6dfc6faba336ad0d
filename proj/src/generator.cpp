#include "tps/generator.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace tps {

std::optional<Shape> parse_shape(std::string_view name) {
  if (name == "random" || name == "random-attachment") return Shape::kRandom;
  if (name == "path") return Shape::kPath;
  if (name == "star") return Shape::kStar;
  if (name == "complete-binary") return Shape::kCompleteBinary;
  if (name == "caterpillar") return Shape::kCaterpillar;
  return std::nullopt;
}

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::kRandom: return "random";
    case Shape::kPath: return "path";
    case Shape::kStar: return "star";
    case Shape::kCompleteBinary: return "complete-binary";
    case Shape::kCaterpillar: return "caterpillar";
  }
  return "?";
}

std::string alphabet_label(std::size_t k) {
  std::string out;
  ++k;
  while (k > 0) {
    --k;
    out.insert(out.begin(), static_cast<char>('a' + k % 26));
    k /= 26;
  }
  return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

LabeledTree generate_tree(const GenSpec& spec) {
  if (spec.nodes == 0) throw std::invalid_argument("node count must be at least 1");
  if (spec.alphabet == 0) throw std::invalid_argument("alphabet size must be at least 1");
  const std::size_t n = spec.nodes;
  std::mt19937_64 rng(spec.seed);

  std::vector<NodeId> parent(n, kNoNode);
  const std::size_t spine = (n + 1) / 2;
  for (std::size_t i = 1; i < n; ++i) {
    switch (spec.shape) {
      case Shape::kRandom: parent[i] = static_cast<NodeId>(uniform_below(rng, i)); break;
      case Shape::kPath: parent[i] = static_cast<NodeId>(i - 1); break;
      case Shape::kStar: parent[i] = 0; break;
      case Shape::kCompleteBinary: parent[i] = static_cast<NodeId>((i - 1) / 2); break;
      case Shape::kCaterpillar:
        parent[i] = static_cast<NodeId>(i < spine ? i - 1 : i - spine);
        break;
    }
  }

  std::vector<std::string> symbols(std::min<std::size_t>(spec.alphabet, n));
  for (std::size_t k = 0; k < symbols.size(); ++k) symbols[k] = alphabet_label(k);
  TreeBuilder b;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = uniform_below(rng, spec.alphabet);
    std::string text = k < symbols.size() ? symbols[k] : alphabet_label(k);
    if (i == 0) b.add_root(std::move(text));
    else b.add_child(parent[i], std::move(text));
  }
  return std::move(b).build();
}

}  // namespace tps
