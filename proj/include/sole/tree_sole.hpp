#pragma once

// SOLE structure for trees: a centroid tree over the degree-3 reduction,
// with a range-sum PST keyed by shifted radius on every leaf (W_v) and on
// every edge of the centroid tree (W_e, stored at the edge's child node).

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sole/decomp.hpp"
#include "sole/engine.hpp"
#include "sole/rangekit.hpp"

namespace sole {

template <OrderedSemigroup S>
class TreeSole final : public SoleEngine<S> {
 public:
  using W = typename S::value_type;

  struct Placement {
    bool leaf_store;  // W_v rather than an edge store
    int node;         // leaf, or child endpoint of the centroid-tree edge
    Dist radius;
  };

  struct Match {
    bool leaf_store;
    int node;
    FacilityId facility;
  };

  // Throws InputError unless `tree` is a tree. A nonzero query_offset shifts
  // every edge-store query key and breaks the structure on purpose.
  explicit TreeSole(const Graph& tree, Dist query_offset = 0)
      : original_count_(tree.vertex_count()),
        query_offset_(query_offset),
        reduced_(reduce_to_degree3(tree)),
        centroid_(build_centroid_tree(reduced_.tree.vertex_count(), edge_pairs(reduced_.tree))),
        edge_store_(centroid_.node_count()),
        leaf_store_(reduced_.tree.vertex_count()) {
    const std::size_t n = reduced_.tree.vertex_count();
    paths_.resize(n);
    near_.resize(n);
    for (Vertex x = 0; x < n; ++x) {
      paths_[x] = centroid_.path_from_root(centroid_.leaf_of(x));
      near_[x].assign(paths_[x].size() - 1, 0);
    }
    fill_side_distances();
  }

  void add(Vertex v, FacilityId f, W w, Dist d) override {
    const Vertex x = rep(v);
    check_radius(d);
    if (homes_.contains(f)) throw std::logic_error("facility already placed");
    const auto& path = paths_[x];
    leaf_store_[x].insert(f, d, w);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const int off = sibling(path[i], path[i + 1]);
      edge_store_[off].insert(f, d - far_distance(x, i), w);
    }
    homes_.emplace(f, v);
  }

  void remove(Vertex v, FacilityId f) override {
    auto it = homes_.find(f);
    if (it == homes_.end() || it->second != v) {
      throw std::logic_error("facility is not placed on this vertex");
    }
    const Vertex x = rep(v);
    const auto& path = paths_[x];
    leaf_store_[x].erase(f);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      edge_store_[sibling(path[i], path[i + 1])].erase(f);
    }
    homes_.erase(it);
  }

  // Partial sums are folded root to leaf, then W_v.
  std::optional<W> sum(Vertex v, Dist d = 0) const override {
    const Vertex x = rep(v);
    check_radius(d);
    const auto& path = paths_[x];
    std::optional<W> acc;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      accumulate_into<S>(acc, edge_store_[path[i + 1]].suffix_sum(edge_key(x, i, d)));
    }
    accumulate_into<S>(acc, leaf_store_[x].suffix_sum(-d));
    return acc;
  }

  std::vector<Ranked<W>> top(Vertex v, std::size_t k, Dist d = 0) const override {
    const Vertex x = rep(v);
    check_radius(d);
    if (k == 0) return {};
    const auto& path = paths_[x];
    std::vector<Ranked<W>> candidates;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto part = edge_store_[path[i + 1]].suffix_top_k(edge_key(x, i, d), k);
      candidates.insert(candidates.end(), part.begin(), part.end());
    }
    auto part = leaf_store_[x].suffix_top_k(-d, k);
    candidates.insert(candidates.end(), part.begin(), part.end());
    keep_top(candidates, k);
    return candidates;
  }

  std::size_t facility_count() const override { return homes_.size(); }

  // Every stored tuple matched by the query (v, d), store by store.
  std::vector<Match> trace(Vertex v, Dist d = 0) const {
    const Vertex x = rep(v);
    check_radius(d);
    const auto& path = paths_[x];
    std::vector<Match> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      for (FacilityId f : edge_store_[path[i + 1]].suffix_report(edge_key(x, i, d))) {
        out.push_back({false, path[i + 1], f});
      }
    }
    for (FacilityId f : leaf_store_[x].suffix_report(-d)) {
      out.push_back({true, static_cast<int>(x), f});
    }
    return out;
  }

  std::vector<Placement> placements(FacilityId f) const {
    std::vector<Placement> out;
    auto it = homes_.find(f);
    if (it == homes_.end()) return out;
    const Vertex x = rep(it->second);
    out.push_back({true, static_cast<int>(x), *leaf_store_[x].key_of(f)});
    const auto& path = paths_[x];
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const int off = sibling(path[i], path[i + 1]);
      out.push_back({false, off, *edge_store_[off].key_of(f)});
    }
    return out;
  }

  const Degree3Tree& reduced() const { return reduced_; }
  const CentroidTree& centroid() const { return centroid_; }

  // Child of internal `node` whose side holds vertex `x` of the reduced tree.
  int child_toward(int node, Vertex x) const {
    const int c0 = centroid_.child(node, 0);
    return centroid_.in_subtree(centroid_.leaf_of(x), c0) ? c0 : centroid_.child(node, 1);
  }

  // Centroid-tree node of the reduced-tree edge joining a and b.
  int node_of_edge(Vertex a, Vertex b) const {
    const auto& edges = reduced_.tree.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if ((edges[i].u == a && edges[i].v == b) || (edges[i].u == b && edges[i].v == a)) {
        return centroid_.node_of_edge(i);
      }
    }
    throw InputError("no such edge");
  }

  std::size_t stored_tuple_count() const {
    std::size_t total = 0;
    for (const auto& s : edge_store_) total += s.size();
    for (const auto& s : leaf_store_) total += s.size();
    return total;
  }

  // Stores holding f: 1 + the depth of its home leaf.
  std::size_t store_count(FacilityId f) const { return placements(f).size(); }

  std::size_t edge_store_size(int node) const { return edge_store_[node].size(); }
  std::size_t leaf_store_size(Vertex x) const { return leaf_store_[x].size(); }

  void check_invariants() const {
    std::size_t expected = 0;
    for (const auto& [f, v] : homes_) {
      const Vertex x = rep(v);
      const auto& path = paths_[x];
      expected += path.size();
      if (!leaf_store_[x].contains(f)) throw std::logic_error("facility missing from its leaf store");
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!edge_store_[sibling(path[i], path[i + 1])].contains(f)) {
          throw std::logic_error("facility missing from an off-path edge store");
        }
      }
    }
    if (stored_tuple_count() != expected) throw std::logic_error("stray tuples in stores");
    for (const auto& s : edge_store_) s.check_invariants();
    for (const auto& s : leaf_store_) s.check_invariants();
  }

 private:
  static std::vector<std::pair<Vertex, Vertex>> edge_pairs(const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const Edge& e : g.edges()) out.push_back({e.u, e.v});
    return out;
  }

  Dist edge_key(Vertex x, std::size_t i, Dist d) const { return near_[x][i] - d + query_offset_; }

  Vertex rep(Vertex v) const {
    if (v >= original_count_) throw InputError("unknown vertex id " + std::to_string(v));
    return reduced_.representative[v];
  }

  int sibling(int parent, int child) const {
    const int c0 = centroid_.child(parent, 0);
    return c0 == child ? centroid_.child(parent, 1) : c0;
  }

  // Distance from x to the endpoint of path node i on the other side.
  Dist far_distance(Vertex x, std::size_t i) const {
    const int node = paths_[x][i];
    return near_[x][i] + reduced_.tree.edges()[centroid_.edge_of(node)].length;
  }

  // near_[x][i]: distance from x to the endpoint of its i-th path node
  // that lies on x's side, by a search confined to that side.
  void fill_side_distances() {
    const std::size_t n = reduced_.tree.vertex_count();
    std::vector<std::pair<Vertex, Dist>> stack;
    std::vector<Vertex> from(n);
    for (std::size_t e = 0; e < reduced_.tree.edge_count(); ++e) {
      const int node = centroid_.node_of_edge(e);
      const std::size_t depth = static_cast<std::size_t>(centroid_.depth(node));
      const Edge& edge = reduced_.tree.edges()[e];
      for (int side : {0, 1}) {
        const int c = centroid_.child(node, side);
        const Vertex start = side == 0 ? edge.u : edge.v;
        stack.assign(1, {start, 0});
        from[start] = start;
        while (!stack.empty()) {
          auto [y, dist] = stack.back();
          stack.pop_back();
          near_[y][depth] = dist;
          for (const Arc& arc : reduced_.tree.neighbors(y)) {
            if (arc.to == from[y] || !centroid_.in_subtree(centroid_.leaf_of(arc.to), c)) continue;
            from[arc.to] = y;
            stack.push_back({arc.to, dist + arc.length});
          }
        }
      }
    }
  }

  std::size_t original_count_;
  Dist query_offset_;
  Degree3Tree reduced_;
  CentroidTree centroid_;
  std::vector<std::vector<int>> paths_;
  std::vector<std::vector<Dist>> near_;
  std::vector<RangeSumPst<S>> edge_store_;
  std::vector<RangeSumPst<S>> leaf_store_;
  std::unordered_map<FacilityId, Vertex> homes_;
};

}  // namespace sole
