// sole_cli: replay scripts, run scaling benchmarks and oracle self-checks.
//
//   sole_cli run --engine tree --graph g.txt --script ops.txt
//   sole_cli bench --engine graph --sizes 64,128,256 --op sum
//   sole_cli selfcheck --engine graph --graph g.txt --decomp c.txt --ops 1000
//
// Exit status: 0 success, 1 input error, 2 selfcheck divergence.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "sole/driver.hpp"

namespace {

struct Inputs {
  std::string engine = "tree";
  std::string graph;
  std::string decomp;
  std::string strategy = "direct";
};

void add_input_flags(CLI::App* cmd, Inputs& in, bool need_graph) {
  cmd->add_option("--engine", in.engine, "tree, graph or oracle")
      ->check(CLI::IsMember({"tree", "graph", "oracle"}));
  auto* graph = cmd->add_option("--graph", in.graph, "graph file");
  if (need_graph) graph->required();
  cmd->add_option("--decomp", in.decomp, "separator decomposition file");
  cmd->add_option("--strategy", in.strategy, "complement query strategy")
      ->check(CLI::IsMember({"direct", "boxes"}));
}

struct Loaded {
  sole::Graph graph;
  std::optional<sole::SeparatorDecomposition> decomposition;
  sole::cli::EngineConfig config;
};

Loaded load(const Inputs& in) {
  Loaded out{sole::load_graph(in.graph), std::nullopt, {}};
  if (!in.decomp.empty()) out.decomposition = sole::load_decomposition(in.decomp, out.graph);
  out.config.kind = sole::cli::parse_engine(in.engine);
  out.config.strategy = sole::cli::parse_strategy(in.strategy);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-of-local-effects structures on trees and t-separable graphs"};
  app.require_subcommand(1);

  Inputs run_in;
  std::string script_path;
  auto* run = app.add_subcommand("run", "replay an operation script");
  add_input_flags(run, run_in, true);
  run->add_option("--script", script_path, "operation script")->required();

  Inputs check_in;
  std::uint64_t seed = 1;
  std::size_t ops = 1000;
  sole::Dist fault = 0;
  auto* check = app.add_subcommand("selfcheck", "random differential test against the oracle");
  add_input_flags(check, check_in, true);
  check->add_option("--seed", seed, "random seed");
  check->add_option("--ops", ops, "number of random operations");
  check->add_option("--inject-fault", fault, "shift every query key by this amount");

  std::string bench_engine = "tree", bench_strategy = "direct", bench_op = "sum";
  std::vector<std::size_t> sizes{64, 128, 256, 512, 1024, 2048, 4096};
  std::uint64_t bench_seed = 1;
  std::size_t samples = 200;
  auto* bench = app.add_subcommand("bench", "operation counts over a size schedule");
  bench->add_option("--engine", bench_engine, "tree or graph")->check(CLI::IsMember({"tree", "graph"}));
  bench->add_option("--strategy", bench_strategy)->check(CLI::IsMember({"direct", "boxes"}));
  bench->add_option("--sizes", sizes, "comma-separated vertex counts")->delimiter(',');
  bench->add_option("--op", bench_op)->check(CLI::IsMember({"add", "remove", "sum", "top"}));
  bench->add_option("--seed", bench_seed, "random seed");
  bench->add_option("--samples", samples, "queries per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      const Loaded in = load(run_in);
      std::ifstream file(script_path);
      if (!file) throw sole::InputError("cannot open script '" + script_path + "'");
      const auto script = sole::cli::parse_script(file, in.graph);
      auto engine = sole::cli::make_engine(in.config, in.graph, in.decomposition ? &*in.decomposition : nullptr);
      sole::cli::run_script(script, in.graph, *engine, std::cout);
      return 0;
    }
    if (check->parsed()) {
      Loaded in = load(check_in);
      in.config.fault_offset = fault;
      const auto report = sole::cli::selfcheck(in.config, in.graph,
                                               in.decomposition ? &*in.decomposition : nullptr, seed, ops);
      sole::cli::write_selfcheck(std::cout, report);
      return report.ok ? 0 : 2;
    }
    sole::cli::BenchConfig config;
    config.engine = sole::cli::parse_engine(bench_engine);
    config.strategy = sole::cli::parse_strategy(bench_strategy);
    config.sizes = sizes;
    config.seed = bench_seed;
    config.op = sole::cli::parse_bench_op(bench_op);
    config.samples = samples;
    const auto rows = sole::cli::bench(config);
    sole::cli::write_bench(std::cout, rows);
    return 0;
  } catch (const sole::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
