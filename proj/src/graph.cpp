#include "sole/graph.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <queue>
#include <sstream>

#include "sole/text.hpp"

namespace sole {

Vertex Graph::add_vertex(std::string name) {
  if (index_.contains(name)) throw InputError("duplicate vertex '" + name + "'");
  const auto v = static_cast<Vertex>(names_.size());
  index_.emplace(name, v);
  names_.push_back(std::move(name));
  adjacency_.emplace_back();
  return v;
}

void Graph::add_edge(Vertex u, Vertex v, Dist length) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InputError("self-loop at '" + names_[u] + "'");
  if (length < 0) throw InputError("negative edge length");
  for (Arc& arc : adjacency_[u]) {
    if (arc.to != v) continue;
    if (length < arc.length) {
      arc.length = length;
      edges_[arc.edge].length = length;
      for (Arc& back : adjacency_[v]) {
        if (back.edge == arc.edge) back.length = length;
      }
    }
    return;
  }
  const std::size_t id = edges_.size();
  edges_.push_back({u, v, length});
  adjacency_[u].push_back({v, length, id});
  adjacency_[v].push_back({u, length, id});
}

std::optional<Vertex> Graph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex Graph::vertex(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

void Graph::check_vertex(Vertex v) const {
  if (v >= names_.size()) throw InputError("unknown vertex id " + std::to_string(v));
}

bool Graph::is_connected() const {
  if (names_.empty()) return false;
  std::vector<char> seen(names_.size(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (const Arc& arc : adjacency_[x]) {
      if (seen[arc.to]) continue;
      seen[arc.to] = 1;
      ++reached;
      stack.push_back(arc.to);
    }
  }
  return reached == names_.size();
}

Graph parse_graph(std::istream& in) {
  Graph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    try {
      if (tokens[0] == "v") {
        expect_arity(tokens, 2);
        if (g.vertex_count() >= kMaxVertices) throw InputError("too many vertices");
        g.add_vertex(tokens[1]);
      } else if (tokens[0] == "e") {
        expect_arity(tokens, 4);
        const Dist length = parse_int(tokens[3]);
        if (length < 0) throw InputError("edge length must be non-negative");
        if (length > kMaxEdgeLength) throw InputError("edge length too large");
        g.add_edge(g.vertex(tokens[1]), g.vertex(tokens[2]), length);
      } else {
        throw InputError("unknown directive '" + tokens[0] + "'");
      }
    } catch (const InputError& e) {
      throw InputError("graph line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (g.vertex_count() == 0) throw InputError("graph has no vertices");
  if (!g.is_connected()) throw InputError("graph is not connected");
  return g;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

std::vector<Dist> dijkstra(const Graph& g, Vertex source) {
  g.check_vertex(source);
  std::vector<Dist> dist(g.vertex_count(), kMaxDist);
  using Item = std::pair<Dist, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x]) continue;
    for (const Arc& arc : g.neighbors(x)) {
      const Dist nd = d + arc.length;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        heap.emplace(nd, arc.to);
      }
    }
  }
  return dist;
}

Dist shortest_distance(const Graph& g, Vertex u, Vertex v) {
  g.check_vertex(v);
  return dijkstra(g, u)[v];
}

Dist SourceDistanceTable::at(Vertex source, Vertex v) const {
  auto it = rows_.find(source);
  if (it == rows_.end() || v >= it->second.size()) {
    throw InputError("no distance entry for (" + std::to_string(source) + ", " +
                     std::to_string(v) + ")");
  }
  return it->second[v];
}

SourceDistanceTable all_pairs_from_sources(const Graph& g, std::span<const Vertex> sources) {
  SourceDistanceTable table;
  for (Vertex s : sources) {
    if (!table.rows_.contains(s)) table.rows_.emplace(s, dijkstra(g, s));
  }
  return table;
}

}  // namespace sole
