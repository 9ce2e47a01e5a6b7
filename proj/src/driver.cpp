#include "sole/driver.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "sole/counters.hpp"
#include "sole/generators.hpp"
#include "sole/graph_sole.hpp"
#include "sole/oracle.hpp"
#include "sole/text.hpp"
#include "sole/tree_sole.hpp"

namespace sole::cli {

namespace {

std::string at_line(std::size_t line, const std::string& what) {
  return "script line " + std::to_string(line) + ": " + what;
}

std::string facility_name(std::span<const std::string> names, FacilityId f) {
  if (f.value < names.size()) return names[f.value];
  std::ostringstream os;
  os << f;
  return os.str();
}

double lg(double x) { return std::log2(std::max(2.0, x)); }

Dist uniform(Rng& rng, Dist lo, Dist hi) { return std::uniform_int_distribution<Dist>(lo, hi)(rng); }

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

EngineKind parse_engine(const std::string& name) {
  if (name == "tree") return EngineKind::kTree;
  if (name == "graph") return EngineKind::kGraph;
  if (name == "oracle") return EngineKind::kOracle;
  throw InputError("unknown engine '" + name + "'");
}

Strategy parse_strategy(const std::string& name) {
  if (name == "direct") return Strategy::kDirect;
  if (name == "boxes") return Strategy::kBoxes;
  throw InputError("unknown strategy '" + name + "'");
}

std::unique_ptr<SoleEngine<IntSum>> make_engine(const EngineConfig& config, const Graph& g,
                                                const SeparatorDecomposition* c) {
  switch (config.kind) {
    case EngineKind::kTree:
      if (!g.is_tree()) throw InputError("the tree engine needs a tree");
      return std::make_unique<TreeSole<IntSum>>(g, config.fault_offset);
    case EngineKind::kGraph: {
      if (c == nullptr) throw InputError("the graph engine needs a decomposition");
      GraphSoleOptions options;
      options.strategy = config.strategy;
      options.corner_offset = config.fault_offset;
      return std::make_unique<GraphSole<IntSum>>(g, *c, options);
    }
    case EngineKind::kOracle:
      if (config.fault_offset != 0) throw InputError("the oracle has no fault to inject");
      return std::make_unique<NaiveSole<IntSum>>(g);
  }
  throw InputError("unknown engine");
}

Script parse_script(std::istream& in, const Graph& g) {
  Script script;
  std::unordered_map<std::string, FacilityId> interned;
  auto facility = [&](const std::string& token) {
    auto [it, fresh] = interned.try_emplace(token, FacilityId{script.facility_names.size()});
    if (fresh) script.facility_names.push_back(token);
    return it->second;
  };
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto tokens = split_tokens(text);
    if (tokens.empty()) continue;
    try {
      Command cmd{};
      cmd.line = line;
      const std::string& op = tokens[0];
      auto vertex = [&](const std::string& name) { return g.vertex(name); };
      if (op == "add") {
        expect_arity(tokens, 5);
        cmd.kind = Command::kAdd;
        cmd.v = vertex(tokens[1]);
        cmd.f = facility(tokens[2]);
        cmd.weight = parse_int(tokens[3]);
        cmd.radius = parse_int(tokens[4]);
      } else if (op == "remove") {
        expect_arity(tokens, 3);
        cmd.kind = Command::kRemove;
        cmd.v = vertex(tokens[1]);
        cmd.f = facility(tokens[2]);
      } else if (op == "sum") {
        if (tokens.size() != 2) expect_arity(tokens, 3);
        cmd.kind = Command::kSum;
        cmd.v = vertex(tokens[1]);
        if (tokens.size() == 3) cmd.radius = parse_int(tokens[2]);
      } else if (op == "top") {
        if (tokens.size() != 3) expect_arity(tokens, 4);
        cmd.kind = Command::kTop;
        cmd.v = vertex(tokens[1]);
        const std::int64_t k = parse_int(tokens[2]);
        if (k < 0) throw InputError("k must be non-negative");
        cmd.k = static_cast<std::size_t>(k);
        if (tokens.size() == 4) cmd.radius = parse_int(tokens[3]);
      } else {
        throw InputError("unknown command '" + op + "'");
      }
      script.commands.push_back(cmd);
    } catch (const InputError& e) {
      throw InputError(at_line(line, e.what()));
    }
  }
  return script;
}

std::string format_sum(const Graph& g, Vertex v, const std::optional<std::int64_t>& value) {
  return "sum " + g.name(v) + " = " + (value ? std::to_string(*value) : std::string("EMPTY"));
}

std::string format_top(const Graph& g, Vertex v, const std::vector<Ranked<std::int64_t>>& top,
                       std::span<const std::string> names) {
  std::string out = "top " + g.name(v) + " = ";
  if (top.empty()) return out + "EMPTY";
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (i) out += ',';
    out += facility_name(names, top[i].id) + ':' + std::to_string(top[i].weight);
  }
  return out;
}

void run_script(const Script& script, const Graph& g, SoleEngine<IntSum>& engine, std::ostream& out) {
  for (const Command& cmd : script.commands) {
    try {
      switch (cmd.kind) {
        case Command::kAdd:
          engine.add(cmd.v, cmd.f, cmd.weight, cmd.radius);
          break;
        case Command::kRemove:
          engine.remove(cmd.v, cmd.f);
          break;
        case Command::kSum:
          out << format_sum(g, cmd.v, engine.sum(cmd.v, cmd.radius)) << '\n';
          break;
        case Command::kTop:
          out << format_top(g, cmd.v, engine.top(cmd.v, cmd.k, cmd.radius), script.facility_names) << '\n';
          break;
      }
    } catch (const std::logic_error& e) {
      throw InputError(at_line(cmd.line, e.what()));
    } catch (const InputError& e) {
      throw InputError(at_line(cmd.line, e.what()));
    }
  }
}

BenchOp parse_bench_op(const std::string& name) {
  if (name == "add") return BenchOp::kAdd;
  if (name == "remove") return BenchOp::kRemove;
  if (name == "sum") return BenchOp::kSum;
  if (name == "top") return BenchOp::kTop;
  throw InputError("unknown bench op '" + name + "'");
}

const char* bench_op_name(BenchOp op) {
  switch (op) {
    case BenchOp::kAdd: return "add";
    case BenchOp::kRemove: return "remove";
    case BenchOp::kSum: return "sum";
    case BenchOp::kTop: return "top";
  }
  return "?";
}

std::vector<BenchRow> bench(const BenchConfig& config) {
  if (config.engine == EngineKind::kOracle) throw InputError("bench runs the tree or graph engine");
  std::vector<BenchRow> rows;
  for (std::size_t n : config.sizes) {
    if (n < 3) throw InputError("bench sizes must be at least 3");
    Rng rng(config.seed ^ (n * 0x9e3779b97f4a7c15ULL));
    Graph g;
    std::optional<SeparatorDecomposition> c;
    if (config.engine == EngineKind::kTree) {
      g = random_tree(rng, n, 4, 20);
    } else {
      auto inst = random_series_parallel_instance(rng, n, 20);
      g = std::move(inst.graph);
      c = std::move(inst.decomposition);
    }
    EngineConfig ec{config.engine, config.strategy, 0};
    auto engine = make_engine(ec, g, c ? &*c : nullptr);

    const std::size_t m = n;
    std::vector<Vertex> homes(m);
    std::uint64_t update_work = 0;
    for (std::size_t i = 0; i < m; ++i) {
      homes[i] = static_cast<Vertex>(pick(rng, n));
      reset_op_counters();
      engine->add(homes[i], FacilityId{i}, uniform(rng, 1, 100), uniform(rng, 0, 40));
      update_work += op_counters().update_work;
    }

    BenchRow row{n, m, config.op, 0, 0};
    if (config.op == BenchOp::kAdd) {
      row.mean_count = static_cast<double>(update_work) / static_cast<double>(m);
    } else if (config.op == BenchOp::kRemove) {
      std::uint64_t work = 0;
      for (std::size_t i = 0; i < m; ++i) {
        reset_op_counters();
        engine->remove(homes[i], FacilityId{i});
        work += op_counters().update_work;
      }
      row.mean_count = static_cast<double>(work) / static_cast<double>(m);
    } else {
      std::uint64_t visits = 0;
      for (std::size_t s = 0; s < config.samples; ++s) {
        const auto v = static_cast<Vertex>(pick(rng, n));
        const Dist d = uniform(rng, 0, 40);
        reset_op_counters();
        if (config.op == BenchOp::kSum) {
          (void)engine->sum(v, d);
        } else {
          (void)engine->top(v, 4, d);
        }
        visits += op_counters().node_visits;
      }
      row.mean_count = static_cast<double>(visits) / static_cast<double>(config.samples);
    }
    const double lm = lg(static_cast<double>(m));
    const double envelope = lg(static_cast<double>(n)) * lm * (config.engine == EngineKind::kGraph ? lm : 1.0);
    row.normalized = row.mean_count / envelope;
    rows.push_back(row);
  }
  return rows;
}

void write_bench(std::ostream& out, std::span<const BenchRow> rows) {
  out << "n\tm\top\tmean_count\tnormalized\n";
  for (const BenchRow& r : rows) {
    out << r.n << '\t' << r.m << '\t' << bench_op_name(r.op) << '\t' << std::fixed << std::setprecision(2)
        << r.mean_count << '\t' << std::setprecision(4) << r.normalized << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

SelfcheckReport selfcheck(const EngineConfig& config, const Graph& g, const SeparatorDecomposition* c,
                          std::uint64_t seed, std::size_t ops) {
  auto engine = make_engine(config, g, c);
  NaiveSole<IntSum> oracle(g);
  Rng rng(seed);
  const std::size_t n = g.vertex_count();
  Dist reach = 0;
  for (Dist d : dijkstra(g, 0)) reach = std::max(reach, d);
  reach = std::max<Dist>(reach, 1);

  SelfcheckReport report;
  std::vector<std::string> names;
  std::vector<std::pair<FacilityId, Vertex>> live;
  for (std::size_t step = 0; step < ops; ++step) {
    report.ops = step + 1;
    const auto roll = rng() % 10;
    std::string line;
    if (roll < 4 || live.empty()) {
      const FacilityId f{names.size()};
      names.push_back("f" + std::to_string(f.value));
      const auto v = static_cast<Vertex>(pick(rng, n));
      const std::int64_t w = uniform(rng, 1, 100);
      const Dist d = uniform(rng, 0, reach);
      engine->add(v, f, w, d);
      oracle.add(v, f, w, d);
      live.push_back({f, v});
      report.transcript.push_back("add " + g.name(v) + ' ' + names[f.value] + ' ' + std::to_string(w) + ' ' +
                                  std::to_string(d));
      continue;
    }
    if (roll < 6) {
      const std::size_t i = pick(rng, live.size());
      const auto [f, v] = live[i];
      engine->remove(v, f);
      oracle.remove(v, f);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
      report.transcript.push_back("remove " + g.name(v) + ' ' + names[f.value]);
      continue;
    }
    const auto v = static_cast<Vertex>(pick(rng, n));
    const Dist d = uniform(rng, 0, reach);
    std::string got, want;
    if (roll < 8) {
      report.transcript.push_back("sum " + g.name(v) + ' ' + std::to_string(d));
      got = format_sum(g, v, engine->sum(v, d));
      want = format_sum(g, v, oracle.sum(v, d));
    } else {
      const std::size_t k = pick(rng, 6);
      report.transcript.push_back("top " + g.name(v) + ' ' + std::to_string(k) + ' ' + std::to_string(d));
      got = format_top(g, v, engine->top(v, k, d), names);
      want = format_top(g, v, oracle.top(v, k, d), names);
    }
    if (got != want) {
      report.ok = false;
      report.expected = want;
      report.actual = got;
      return report;
    }
  }
  return report;
}

void write_selfcheck(std::ostream& out, const SelfcheckReport& report) {
  if (report.ok) {
    out << "selfcheck PASS: " << report.ops << " ops\n";
    return;
  }
  out << "selfcheck FAIL at op " << report.ops << '\n';
  out << "expected: " << report.expected << '\n';
  out << "actual:   " << report.actual << '\n';
  out << "transcript:\n";
  for (const std::string& line : report.transcript) out << "  " << line << '\n';
}

}  // namespace sole::cli
