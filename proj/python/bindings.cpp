#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tps/bench.hpp"
#include "tps/check.hpp"
#include "tps/cli.hpp"
#include "tps/generator.hpp"
#include "tps/naive.hpp"
#include "tps/parse.hpp"
#include "tps/solve.hpp"

namespace py = pybind11;
using namespace tps;

namespace {

Algo algo_arg(const std::string& name) {
  const auto a = parse_algo(name);
  if (!a) throw py::value_error("unknown algo " + name);
  return *a;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_of(const MatchSet& m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& [i, j] : m) out.emplace_back(i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_tps, m) {
  m.doc() = "Tree path subsequence queries.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<LabeledTree>(m, "Tree")
      .def_property_readonly("size", &LabeledTree::size)
      .def_property_readonly("leaf_count", &LabeledTree::leaf_count)
      .def_property_readonly("height", &LabeledTree::height)
      .def("paths", &root_to_leaf_paths, "Root-to-leaf label paths, by leaf number.")
      .def("__str__", &format_tree)
      .def("__repr__", [](const LabeledTree& t) { return "Tree(\"" + format_tree(t) + "\")"; });

  m.def("parse_tree", [](const std::string& s) { return parse_tree(s); }, py::arg("text"));
  m.def("parse_xml", [](const std::string& s) { return parse_xml(s); }, py::arg("text"));
  m.def("format_tree", &format_tree, py::arg("tree"));

  m.def(
      "solve",
      [](const LabeledTree& p, const LabeledTree& t, const std::string& algo, std::size_t micro_size) {
        BitparOptions o;
        o.micro_size = micro_size;
        return pairs_of(solve(algo_arg(algo), p, t, nullptr, o));
      },
      py::arg("pattern"), py::arg("target"), py::arg("algo") = "dict", py::arg("micro_size") = 0,
      "Sorted (pattern leaf, target leaf) pairs, leaves numbered from 1 in preorder.");

  m.def(
      "solve_queries",
      [](const std::vector<std::string>& lines, const LabeledTree& t, const std::string& algo) {
        std::string text;
        for (const auto& l : lines) text += l + "\n";
        return solve_queries(algo_arg(algo), parse_queries(text), t);
      },
      py::arg("queries"), py::arg("target"), py::arg("algo") = "dict",
      "Sorted (query index, target leaf) pairs for a/b/c path queries; query indices start at 1.");

  m.def(
      "is_subsequence",
      [](const std::vector<std::string>& p, const std::vector<std::string>& t) {
        return is_subsequence<std::string>(p, t);
      },
      py::arg("p"), py::arg("t"));

  m.def(
      "generate",
      [](const std::string& shape, std::size_t nodes, std::size_t alphabet, std::uint64_t seed) {
        const auto s = parse_shape(shape);
        if (!s) throw py::value_error("unknown shape " + shape);
        return generate_tree({nodes, alphabet, *s, seed});
      },
      py::arg("shape") = "random", py::arg("nodes") = 1, py::arg("alphabet") = 1, py::arg("seed") = 0);

  m.def(
      "check",
      [](std::size_t iterations, std::size_t max_nodes, std::uint64_t seed) {
        CheckConfig c;
        c.iterations = iterations;
        c.max_nodes = max_nodes;
        c.seed = seed;
        std::ostringstream log;
        const CheckReport r = run_check(c, SolverSet::defaults(), &log);
        return py::make_tuple(r.ok(), log.str());
      },
      py::arg("iterations") = 1000, py::arg("max_nodes") = 200, py::arg("seed") = 1,
      "Runs the randomized differ; returns (ok, report text).");

  m.def(
      "bench",
      [](const std::string& config) {
        std::ostringstream csv;
        write_bench_csv(csv, run_bench(parse_bench_config(config)));
        return csv.str();
      },
      py::arg("config_json"), "Runs a JSON benchmark matrix and returns CSV text.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the tps command line in-process; returns (exit code, stdout, stderr).");
}
