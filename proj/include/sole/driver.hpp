#pragma once

// Script replay, benchmarks and randomized self-checks behind the CLI. All
// engines here use integer-sum weights.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sole/decomp.hpp"
#include "sole/engine.hpp"
#include "sole/multidim.hpp"

namespace sole::cli {

enum class EngineKind { kTree, kGraph, kOracle };

EngineKind parse_engine(const std::string& name);
Strategy parse_strategy(const std::string& name);

struct EngineConfig {
  EngineKind kind = EngineKind::kTree;
  Strategy strategy = Strategy::kDirect;
  // Off-by-one fault for selfcheck; 0 means a correct engine.
  Dist fault_offset = 0;
};

// Throws InputError when the graph is not a tree (tree engine) or when the
// graph engine has no decomposition.
std::unique_ptr<SoleEngine<IntSum>> make_engine(const EngineConfig& config, const Graph& g,
                                                const SeparatorDecomposition* c);

struct Command {
  enum Kind { kAdd, kRemove, kSum, kTop } kind;
  Vertex v = 0;
  FacilityId f{};
  std::int64_t weight = 0;
  Dist radius = 0;
  std::size_t k = 0;
  std::size_t line = 0;
};

// Facility tokens are interned in order of first appearance.
struct Script {
  std::vector<Command> commands;
  std::vector<std::string> facility_names;
};

// Grammar, one command per line, '#' comments:
//   add <v> <f> <weight> <radius>
//   remove <v> <f>
//   sum <v> [<radius>]
//   top <v> <k> [<radius>]
// Throws InputError naming the line on any syntax or vertex error.
Script parse_script(std::istream& in, const Graph& g);

// One output line per sum/top. Semantic errors (duplicate or absent facility,
// bad radius) throw InputError naming the script line.
void run_script(const Script& script, const Graph& g, SoleEngine<IntSum>& engine, std::ostream& out);

std::string format_sum(const Graph& g, Vertex v, const std::optional<std::int64_t>& value);
std::string format_top(const Graph& g, Vertex v, const std::vector<Ranked<std::int64_t>>& top,
                       std::span<const std::string> names);

enum class BenchOp { kAdd, kRemove, kSum, kTop };
BenchOp parse_bench_op(const std::string& name);
const char* bench_op_name(BenchOp op);

struct BenchRow {
  std::size_t n = 0;       // graph vertices
  std::size_t m = 0;       // live facilities
  BenchOp op = BenchOp::kSum;
  double mean_count = 0;   // node visits (queries) or update work (updates) per op
  double normalized = 0;   // mean_count / envelope(n, m)
};

struct BenchConfig {
  EngineKind engine = EngineKind::kTree;
  Strategy strategy = Strategy::kDirect;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 1;
  BenchOp op = BenchOp::kSum;
  std::size_t samples = 200;
};

// Tree engine: random trees with lengths <= 20 and envelope lg n * lg m.
// Graph engine: series-parallel graphs (t = 2), envelope lg n * lg^2 m.
// m = n facilities, radii uniform in [0, 40].
std::vector<BenchRow> bench(const BenchConfig& config);
void write_bench(std::ostream& out, std::span<const BenchRow> rows);

struct SelfcheckReport {
  bool ok = true;
  std::size_t ops = 0;
  std::vector<std::string> transcript;  // script lines up to the divergence
  std::string expected;
  std::string actual;
};

// Random adds, removes, sums and tops compared against the oracle. Stops at
// the first divergence.
SelfcheckReport selfcheck(const EngineConfig& config, const Graph& g, const SeparatorDecomposition* c,
                          std::uint64_t seed, std::size_t ops);
void write_selfcheck(std::ostream& out, const SelfcheckReport& report);

}  // namespace sole::cli
