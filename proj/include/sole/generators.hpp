#pragma once

// Seeded random instances: trees, partial 2-trees with tree decompositions,
// and series-parallel graphs with branch decompositions. Vertices are named
// v0, v1, ... in creation order.

#include <random>

#include "sole/decomp.hpp"
#include "sole/graph.hpp"

namespace sole {

using Rng = std::mt19937_64;

// Random tree on n vertices (n >= 1); every new vertex hangs off a random
// earlier vertex of degree below max_degree. Lengths uniform in [0, max_length].
Graph random_tree(Rng& rng, std::size_t n, std::size_t max_degree, Dist max_length);

struct PartialTwoTree {
  Graph graph;
  TreeDecomposition decomposition;  // width <= 2, one bag per 2-tree triangle
};

// A random 2-tree on n vertices with some non-spanning edges dropped.
PartialTwoTree random_partial_two_tree(Rng& rng, std::size_t n, Dist max_length);

struct SeriesParallel {
  Graph graph;
  BranchDecomposition decomposition;  // width <= 2
};

// Grown from a triangle by series subdivisions and parallel paths until it
// has n vertices (n >= 3).
SeriesParallel random_series_parallel(Rng& rng, std::size_t n, Dist max_length);

struct DecomposedGraph {
  Graph graph;
  SeparatorDecomposition decomposition;
};

// Tree decomposition -> binarize -> subdivide -> edge bags; width t <= 3.
DecomposedGraph random_partial_two_tree_instance(Rng& rng, std::size_t n, Dist max_length);

// Branch decomposition -> middle sets; width t <= 2.
DecomposedGraph random_series_parallel_instance(Rng& rng, std::size_t n, Dist max_length);

// For a tree with maximum degree 3: C is the tree itself plus one extra
// node hung off a leaf, and edge (parent, child) carries {child}. t = 1.
SeparatorDecomposition tree_separator_decomposition(const Graph& tree);

}  // namespace sole
