#include "sole/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sole {

namespace {

Dist random_length(Rng& rng, Dist max_length) {
  return std::uniform_int_distribution<Dist>(0, max_length)(rng);
}

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Graph named_vertices(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  return g;
}

}  // namespace

Graph random_tree(Rng& rng, std::size_t n, std::size_t max_degree, Dist max_length) {
  if (n == 0) throw std::invalid_argument("tree needs a vertex");
  if (max_degree < 2 && n > 2) throw std::invalid_argument("max_degree too small");
  Graph g = named_vertices(n);
  std::vector<Vertex> open{0};
  std::vector<std::size_t> degree(n, 0);
  for (Vertex x = 1; x < n; ++x) {
    const std::size_t i = pick(rng, open.size());
    const Vertex parent = open[i];
    g.add_edge(parent, x, random_length(rng, max_length));
    if (++degree[parent] >= max_degree) {
      open[i] = open.back();
      open.pop_back();
    }
    ++degree[x];
    if (degree[x] < max_degree) open.push_back(x);
  }
  return g;
}

PartialTwoTree random_partial_two_tree(Rng& rng, std::size_t n, Dist max_length) {
  if (n == 0) throw std::invalid_argument("graph needs a vertex");
  PartialTwoTree out{named_vertices(n), {}};
  auto& td = out.decomposition;
  if (n <= 2) {
    std::vector<Vertex> bag;
    for (Vertex v = 0; v < n; ++v) bag.push_back(v);
    if (n == 2) out.graph.add_edge(0, 1, random_length(rng, max_length));
    td.bags.push_back(bag);
    return out;
  }
  struct Slot {
    Vertex a, b;
    std::size_t node;
  };
  td.bags.push_back({0, 1, 2});
  out.graph.add_edge(0, 1, random_length(rng, max_length));
  out.graph.add_edge(1, 2, random_length(rng, max_length));
  if (coin(rng, 0.7)) out.graph.add_edge(0, 2, random_length(rng, max_length));
  std::vector<Slot> slots{{0, 1, 0}, {0, 2, 0}, {1, 2, 0}};
  for (Vertex x = 3; x < n; ++x) {
    const Slot s = slots[pick(rng, slots.size())];
    const std::size_t node = td.bags.size();
    td.bags.push_back({s.a, s.b, x});
    td.edges.push_back({s.node, node});
    out.graph.add_edge(x, s.a, random_length(rng, max_length));
    if (coin(rng, 0.7)) out.graph.add_edge(x, s.b, random_length(rng, max_length));
    slots.push_back({s.a, x, node});
    slots.push_back({s.b, x, node});
  }
  return out;
}

SeriesParallel random_series_parallel(Rng& rng, std::size_t n, Dist max_length) {
  if (n < 3) throw std::invalid_argument("series-parallel generator needs n >= 3");
  struct RawEdge {
    Vertex u, v;
    Dist length;
    bool alive;
    std::size_t leaf;
  };
  std::vector<RawEdge> raw;
  BranchDecomposition bd;
  auto new_node = [&](std::optional<std::size_t> edge) {
    bd.leaf_edge.push_back(edge);
    return bd.node_count++;
  };
  auto new_edge = [&](Vertex u, Vertex v, std::size_t parent) {
    const std::size_t e = raw.size();
    const std::size_t leaf = new_node(e);
    raw.push_back({u, v, random_length(rng, max_length), true, leaf});
    bd.edges.push_back({parent, leaf});
  };

  const std::size_t center = new_node(std::nullopt);
  new_edge(0, 1, center);
  new_edge(1, 2, center);
  new_edge(0, 2, center);
  Vertex next = 3;
  std::vector<std::size_t> alive{0, 1, 2};
  while (next < n) {
    const std::size_t pos = pick(rng, alive.size());
    const std::size_t e = alive[pos];
    const Vertex s = raw[e].u, t = raw[e].v, m = next++;
    const std::size_t leaf = raw[e].leaf;
    bd.leaf_edge[leaf].reset();
    if (coin(rng, 0.5)) {
      raw[e].alive = false;
      alive[pos] = alive.back();
      alive.pop_back();
      alive.push_back(raw.size());
      new_edge(s, m, leaf);
      alive.push_back(raw.size());
      new_edge(m, t, leaf);
    } else {
      const std::size_t kept = new_node(e);
      raw[e].leaf = kept;
      bd.edges.push_back({leaf, kept});
      const std::size_t inner = new_node(std::nullopt);
      bd.edges.push_back({leaf, inner});
      alive.push_back(raw.size());
      new_edge(s, m, inner);
      alive.push_back(raw.size());
      new_edge(m, t, inner);
    }
  }

  SeriesParallel out{named_vertices(n), {}};
  std::vector<std::size_t> final_index(raw.size(), 0);
  for (std::size_t e = 0; e < raw.size(); ++e) {
    if (!raw[e].alive) continue;
    final_index[e] = out.graph.edge_count();
    out.graph.add_edge(raw[e].u, raw[e].v, raw[e].length);
  }
  for (auto& mapped : bd.leaf_edge) {
    if (mapped) mapped = final_index[*mapped];
  }
  out.decomposition = std::move(bd);
  return out;
}

DecomposedGraph random_partial_two_tree_instance(Rng& rng, std::size_t n, Dist max_length) {
  PartialTwoTree p = random_partial_two_tree(rng, n, max_length);
  TreeDecomposition td = subdivide_with_intersections(binarize(p.decomposition));
  SeparatorDecomposition c = from_nice_tree_decomposition(p.graph, td);
  return {std::move(p.graph), std::move(c)};
}

DecomposedGraph random_series_parallel_instance(Rng& rng, std::size_t n, Dist max_length) {
  SeriesParallel sp = random_series_parallel(rng, n, max_length);
  SeparatorDecomposition c = from_branch_decomposition(sp.graph, sp.decomposition);
  return {std::move(sp.graph), std::move(c)};
}

SeparatorDecomposition tree_separator_decomposition(const Graph& tree) {
  if (!tree.is_tree()) throw InputError("graph is not a tree");
  const std::size_t n = tree.vertex_count();
  Vertex root = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (tree.degree(v) > 3) throw InputError("tree has a vertex of degree above 3");
    if (tree.degree(v) <= 1 && tree.degree(root) > 1) root = v;
  }
  SeparatorDecomposition c;
  for (Vertex v = 0; v < n; ++v) c.node_names.push_back(tree.name(v));
  c.node_names.push_back(tree.name(root) + "^");
  c.edges.push_back({n, root, {root}});
  std::vector<Vertex> stack{root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (const Arc& arc : tree.neighbors(x)) {
      if (seen[arc.to]) continue;
      seen[arc.to] = 1;
      c.edges.push_back({x, arc.to, {arc.to}});
      stack.push_back(arc.to);
    }
  }
  c.assign_default_homes(n);
  return c;
}

}  // namespace sole
