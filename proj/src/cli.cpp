#include "tps/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "tps/bench.hpp"
#include "tps/check.hpp"
#include "tps/generator.hpp"
#include "tps/parse.hpp"
#include "tps/query_trie.hpp"
#include "tps/solve.hpp"

namespace tps {

namespace {

constexpr int kExitNone = 1;
constexpr int kExitError = 2;

constexpr const char* kNumbering =
    "Paths are numbered by their leaf: leaves count from 1 in preorder (children in input order).";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LabeledTree read_tree(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  bool xml = format == "xml";
  if (format == "auto") {
    const auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    xml = ext == "xml";
  }
  try {
    return xml ? parse_xml(text) : parse_tree(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string render_path(const LabeledTree& tree, std::uint32_t leaf) {
  std::vector<NodeId> nodes;
  for (NodeId v = tree.leaf(leaf);; v = tree.parent(v)) {
    nodes.push_back(v);
    if (v == tree.root()) break;
  }
  std::string out;
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    if (!out.empty()) out += '/';
    out += quote_label(tree.text(*it), "/");
  }
  return out;
}

/// Writes to --out when given, otherwise to `out`.
template <typename F>
void emit(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  write(file);
  if (!file) throw std::runtime_error("cannot write " + path);
}

Algo algo_of(const std::string& name) {
  const auto a = parse_algo(name);
  if (!a) throw std::runtime_error("unknown algo " + name);
  return *a;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree path subsequence queries.", "tps"};
  app.footer(kNumbering);
  app.require_subcommand(1);

  const std::vector<std::string> algos{"naive", "dict", "bitpar"};
  const std::vector<std::string> formats{"auto", "tree", "xml"};

  std::string pattern_file, target_file, queries_file, algo = "dict", format = "auto", out_file;
  bool paths = false;
  auto* query = app.add_subcommand("query", "Report every (pattern leaf, target leaf) pair whose path is a subsequence.");
  query->add_option("--pattern", pattern_file, "Pattern tree file")->required();
  query->add_option("--target", target_file, "Target tree file")->required();
  query->add_option("--algo", algo, "Solver")->check(CLI::IsMember(algos));
  query->add_option("--format", format, "Input format (auto: .xml files are XML)")->check(CLI::IsMember(formats));
  query->add_flag("--paths", paths, "Append both label paths to each pair");
  query->add_option("--out", out_file, "Write the pairs here instead of stdout");

  auto* trie = app.add_subcommand("trie-query", "Answer a file of path queries against one target.");
  trie->add_option("--queries", queries_file, "Query file, one a/b/c path per line")->required();
  trie->add_option("--target", target_file, "Target tree file")->required();
  trie->add_option("--algo", algo, "Solver")->check(CLI::IsMember(algos));
  trie->add_option("--format", format, "Target format")->check(CLI::IsMember(formats));
  trie->add_option("--out", out_file, "Write the pairs here instead of stdout");

  std::string shape = "random";
  std::size_t nodes = 1, alphabet = 1;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Print a random tree in parenthesized form.");
  gen->add_option("--shape", shape, "random | path | star | complete-binary | caterpillar");
  gen->add_option("--nodes", nodes, "Node count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--alphabet", alphabet, "Number of distinct labels")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed");

  CheckConfig check_config;
  auto* check = app.add_subcommand("check", "Compare all solvers and invariants on random instances.");
  check->add_option("--iters", check_config.iterations, "Number of instances");
  check->add_option("--max-nodes", check_config.max_nodes, "Largest tree size")->check(CLI::PositiveNumber);
  check->add_option("--seed", check_config.seed, "Random seed");

  std::string config_file;
  auto* bench = app.add_subcommand("bench", "Run a benchmark matrix and write CSV.");
  bench->add_option("--config", config_file, "JSON run matrix")->required();
  bench->add_option("--out", out_file, "CSV output file (stdout if omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*query) {
      const LabeledTree p = read_tree(pattern_file, format);
      const LabeledTree t = read_tree(target_file, format);
      const MatchSet m = solve(algo_of(algo), p, t);
      emit(out_file, out, [&](std::ostream& o) {
        for (const auto& [i, j] : m) {
          o << i << '\t' << j;
          if (paths) o << '\t' << render_path(p, i) << '\t' << render_path(t, j);
          o << '\n';
        }
      });
      return m.empty() ? kExitNone : 0;
    }
    if (*trie) {
      const std::vector<Query> queries = parse_queries(read_file(queries_file));
      if (queries.empty()) throw std::runtime_error(queries_file + ": no queries");
      const LabeledTree t = read_tree(target_file, format);
      const auto hits = solve_queries(algo_of(algo), queries, t);
      emit(out_file, out, [&](std::ostream& o) {
        for (const auto& [q, j] : hits) o << q << '\t' << j << '\n';
      });
      return hits.empty() ? kExitNone : 0;
    }
    if (*gen) {
      GenSpec g;
      const auto s = parse_shape(shape);
      if (!s) throw std::runtime_error("unknown shape " + shape);
      g.shape = *s;
      g.nodes = nodes;
      g.alphabet = alphabet;
      g.seed = seed;
      out << format_tree(generate_tree(g)) << '\n';
      return 0;
    }
    if (*check) {
      const CheckReport report = run_check(check_config, SolverSet::defaults(), &out);
      return report.ok() ? 0 : kExitNone;
    }
    if (*bench) {
      const auto records = run_bench(parse_bench_config(read_file(config_file)));
      emit(out_file, out, [&](std::ostream& o) { write_bench_csv(o, records); });
      return 0;
    }
  } catch (const std::exception& e) {
    err << "tps: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace tps
