#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sole/core.hpp"

namespace sole {

struct Edge {
  Vertex u;
  Vertex v;
  Dist length;
};

struct Arc {
  Vertex to;
  Dist length;
  std::size_t edge;  // index into Graph::edges()
};

// Undirected graph with non-negative integer edge lengths and named vertices.
// Parallel edges collapse to the shortest one; self-loops are rejected.
class Graph {
 public:
  Vertex add_vertex(std::string name);
  void add_edge(Vertex u, Vertex v, Dist length);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Arc> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  const std::string& name(Vertex v) const { return names_[v]; }
  std::optional<Vertex> find(std::string_view name) const;
  // Throws InputError for unknown names.
  Vertex vertex(std::string_view name) const;
  // Throws InputError for out-of-range ids.
  void check_vertex(Vertex v) const;

  bool is_connected() const;
  bool is_tree() const { return is_connected() && edges_.size() + 1 == names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<std::vector<Arc>> adjacency_;
  std::vector<Edge> edges_;
};

// Line format: "v <id>", "e <id> <id> <length>", '#' comments. Throws
// InputError (with the line number) on malformed, disconnected or empty input.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);

// Single-source distances; unreachable vertices get kMaxDist.
std::vector<Dist> dijkstra(const Graph& g, Vertex source);

Dist shortest_distance(const Graph& g, Vertex u, Vertex v);

// Distances from each source to every vertex.
class SourceDistanceTable {
 public:
  Dist at(Vertex source, Vertex v) const;
  bool has_source(Vertex source) const { return rows_.contains(source); }
  std::size_t source_count() const { return rows_.size(); }
  std::span<const Dist> row(Vertex source) const { return rows_.at(source); }

 private:
  friend SourceDistanceTable all_pairs_from_sources(const Graph&, std::span<const Vertex>);
  std::unordered_map<Vertex, std::vector<Dist>> rows_;
};

SourceDistanceTable all_pairs_from_sources(const Graph& g, std::span<const Vertex> sources);

}  // namespace sole
