#pragma once

// Degree-3 reduction, centroid trees, and separator decompositions (with
// validation and conversions from tree and branch decompositions).

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sole/core.hpp"
#include "sole/graph.hpp"

namespace sole {

// ------------------------------------------------------------ degree 3

struct Degree3Tree {
  Graph tree;
  // Original vertex -> its representative in `tree` (the gadget node that
  // keeps the vertex's first incident edge, which is the vertex itself).
  std::vector<Vertex> representative;
  // Vertex of `tree` -> original vertex whose gadget it belongs to.
  std::vector<Vertex> owner;
};

// Replaces every vertex of degree d > 3 by a path of d - 2 nodes joined by
// zero-length edges. The first node keeps the original name and incident
// edges 0 and 1; middle node i keeps edge i + 1; the last keeps the last
// two. Added nodes are named with primes (v', v'', ...). Throws InputError
// unless `g` is a tree.
Degree3Tree reduce_to_degree3(const Graph& g);

// ------------------------------------------------------------ centroid tree

// Binary decomposition tree over an unrooted tree with N vertices and N - 1
// edges. Nodes 0..N-1 are leaves (vertex i); node N + i is internal and
// stands for edge i. Child 0 of an internal node covers the side of
// edges[i].first, child 1 the side of edges[i].second.
class CentroidTree {
 public:
  static constexpr int kNone = -1;

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t node_count() const { return parent_.size(); }
  int root() const { return root_; }
  bool is_leaf(int node) const { return static_cast<std::size_t>(node) < vertex_count_; }
  int parent(int node) const { return parent_[node]; }
  int child(int node, int side) const { return children_[node][side]; }
  int depth(int node) const { return depth_[node]; }
  // Leaves below `node`.
  std::size_t part_size(int node) const { return part_size_[node]; }

  int leaf_of(Vertex v) const { return static_cast<int>(v); }
  int node_of_edge(std::size_t edge) const { return static_cast<int>(vertex_count_ + edge); }
  Vertex vertex_of(int leaf) const { return static_cast<Vertex>(leaf); }
  std::size_t edge_of(int node) const { return static_cast<std::size_t>(node) - vertex_count_; }

  // Edges of the root-to-node path, as nodes: root first, `node` last.
  std::vector<int> path_from_root(int node) const;
  // Longest root-to-leaf path, in edges.
  int height() const;
  // Whether `node` lies in the subtree of `ancestor` (inclusive).
  bool in_subtree(int node, int ancestor) const {
    return tin_[ancestor] <= tin_[node] && tin_[node] < tout_[ancestor];
  }

 private:
  friend CentroidTree build_centroid_tree(std::size_t,
                                          std::span<const std::pair<Vertex, Vertex>>);
  std::size_t vertex_count_ = 0;
  int root_ = kNone;
  std::vector<int> parent_;
  std::vector<std::array<int, 2>> children_;
  std::vector<int> depth_;
  std::vector<std::size_t> part_size_;
  std::vector<int> tin_, tout_;
};

// At every step picks the edge minimizing the larger side, ties to the
// smallest edge index. Throws InputError if the input is not a tree or has
// a vertex of degree above 3.
CentroidTree build_centroid_tree(std::size_t vertex_count,
                                 std::span<const std::pair<Vertex, Vertex>> edges);

// ------------------------------------------------------------ separator decompositions

struct SeparatorDecomposition {
  struct CEdge {
    std::size_t a;
    std::size_t b;
    std::vector<Vertex> bag;
  };
  std::vector<std::string> node_names;
  std::vector<CEdge> edges;
  // Graph vertex -> index of its home edge in `edges`.
  std::vector<std::size_t> home;

  std::size_t width() const;
  // Fills `home` with the lowest-index edge whose bag holds each vertex,
  // keeping entries that are already set and valid.
  void assign_default_homes(std::size_t vertex_count);
};

struct ValidationReport {
  bool ok = true;
  std::size_t width = 0;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  std::string summary() const;
};

// Checks shape (tree, degree <= 3, at least one edge), bag sanity and size
// (when `max_width` is given), coverage, homes, and the separator property
// of every edge by a search in g with the bag removed.
ValidationReport validate_separator_decomposition(const Graph& g, const SeparatorDecomposition& c,
                                                  std::optional<std::size_t> max_width = {});

// Lines: "cnode <id>", "cedge <id> <id> [bag]" with the bag comma-separated
// ('-' or nothing for an empty bag), "home <vertex> <cedge-index>"
// (0-based). Missing homes default to the lowest bag-holding edge.
SeparatorDecomposition parse_decomposition(std::istream& in, const Graph& g);
SeparatorDecomposition load_decomposition(const std::string& path, const Graph& g);
void write_decomposition(std::ostream& out, const Graph& g, const SeparatorDecomposition& c);

// ------------------------------------------------------------ conversions

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t width() const;  // max bag size - 1
};

// Throws InputError describing the first failed condition.
void validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);

// Splits nodes of degree > 3 into chains of copies of their bag.
TreeDecomposition binarize(const TreeDecomposition& td);

// Puts a node carrying the intersection of the two bags on every edge, so
// adjacent bags are nested and every edge union is one of the original bags.
TreeDecomposition subdivide_with_intersections(const TreeDecomposition& td);

// Edge bag = union of the two node bags. A single-node decomposition turns
// into two nodes joined by one edge carrying the bag.
SeparatorDecomposition from_nice_tree_decomposition(const Graph& g, const TreeDecomposition& td);

struct BranchDecomposition {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // Per node: the graph edge mapped to it (leaves only).
  std::vector<std::optional<std::size_t>> leaf_edge;
};

// Edge bags are middle sets; edges ending at a leaf carry both endpoints of
// that leaf's graph edge so that degree-1 graph vertices are covered.
SeparatorDecomposition from_branch_decomposition(const Graph& g, const BranchDecomposition& bd);

}  // namespace sole
