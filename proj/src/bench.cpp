#include "tps/bench.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace tps {

namespace {

using nlohmann::json;

GenSpec gen_spec_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("tree spec must be an object");
  GenSpec g;
  const auto shape = parse_shape(j.value("shape", std::string("random")));
  if (!shape) throw std::invalid_argument("unknown shape " + j.value("shape", std::string()));
  g.shape = *shape;
  g.nodes = j.at("nodes").get<std::size_t>();
  g.alphabet = j.value("alphabet", std::size_t{1});
  g.seed = j.value("seed", std::uint64_t{0});
  if (g.nodes == 0) throw std::invalid_argument("nodes must be at least 1");
  if (g.alphabet == 0) throw std::invalid_argument("alphabet must be at least 1");
  return g;
}

}  // namespace

std::vector<Query> generate_queries(const QuerySetSpec& spec) {
  if (spec.count == 0 || spec.length == 0 || spec.alphabet == 0)
    throw std::invalid_argument("query count, length and alphabet must be at least 1");
  std::mt19937_64 rng(spec.seed);
  std::vector<Query> out(spec.count);
  for (Query& q : out) {
    q.push_back(alphabet_label(0));
    for (std::size_t i = 1; i < spec.length; ++i) q.push_back(alphabet_label(uniform_below(rng, spec.alphabet)));
  }
  return out;
}

std::vector<BenchRun> parse_bench_config(std::string_view text) {
  std::vector<BenchRun> runs;
  try {
    const json doc = json::parse(text);
    for (const json& r : doc.at("runs")) {
      BenchRun run;
      if (r.contains("queries")) {
        const json& q = r.at("queries");
        QuerySetSpec spec;
        spec.count = q.at("count").get<std::size_t>();
        spec.length = q.value("length", std::size_t{1});
        spec.alphabet = q.value("alphabet", std::size_t{1});
        spec.seed = q.value("seed", std::uint64_t{0});
        if (spec.count == 0 || spec.length == 0 || spec.alphabet == 0)
          throw std::invalid_argument("query count, length and alphabet must be at least 1");
        run.queries = spec;
      } else {
        run.pattern = gen_spec_from(r.at("pattern"));
      }
      run.target = gen_spec_from(r.at("target"));
      if (r.contains("algos")) {
        run.algos.clear();
        for (const json& a : r.at("algos")) {
          const auto algo = parse_algo(a.get<std::string>());
          if (!algo) throw std::invalid_argument("unknown algo " + a.get<std::string>());
          run.algos.push_back(*algo);
        }
      }
      run.micro_size = r.value("micro_size", std::size_t{0});
      runs.push_back(std::move(run));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad bench config: ") + e.what());
  }
  return runs;
}

BenchRecord bench_one(Algo algo, const LabeledTree& pattern, const LabeledTree& target, std::size_t micro_size) {
  BenchRecord r;
  r.solver = std::string(algo_name(algo));
  r.n_p = pattern.size();
  r.n_t = target.size();
  r.l_p = pattern.leaf_count();
  r.l_t = target.leaf_count();
  SolveStats stats;
  BitparOptions options;
  options.micro_size = micro_size;
  const auto start = std::chrono::steady_clock::now();
  const MatchSet m = solve(algo, pattern, target, &stats, options);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.match_count = m.size();
  switch (algo) {
    case Algo::kNaive:
      r.work = static_cast<std::uint64_t>(r.l_p) * r.l_t;
      break;
    case Algo::kDict:
      r.work = stats.dict.touches;
      r.peak_live_states = 1;
      break;
    case Algo::kBitpar:
      r.work = stats.bitpar.down_m_calls;
      r.peak_live_states = stats.bitpar.max_live_states;
      r.micro_size = stats.bitpar.micro_size;
      r.micro_count = stats.bitpar.micro_count;
      break;
  }
  return r;
}

std::vector<BenchRecord> run_bench(const std::vector<BenchRun>& runs) {
  std::vector<BenchRecord> out;
  for (const BenchRun& run : runs) {
    const LabeledTree p = run.queries ? build_trie(generate_queries(*run.queries)).tree : generate_tree(run.pattern);
    const LabeledTree t = generate_tree(run.target);
    for (Algo a : run.algos) {
      out.push_back(bench_one(a, p, t, run.micro_size));
      if (run.queries) out.back().queries = run.queries->count;
    }
  }
  return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchHeader << '\n';
  for (const BenchRecord& r : records) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    out << r.solver << ',' << r.n_p << ',' << r.n_t << ',' << r.l_p << ',' << r.l_t << ',' << ms << ','
        << r.peak_live_states << ',' << r.work << ',' << r.match_count << ',' << r.micro_size << ','
        << r.micro_count << ',' << r.queries << '\n';
  }
}

}  // namespace tps
