#pragma once

// SOLE structure for graphs with a separator decomposition C. The centroid
// tree T is built over C (leaves = nodes of C, internal nodes = edges of C).
// Every internal node e of T has a node store W_e and every edge of T an
// edge store (kept at its child node); both are |S_e|-dimensional
// range-sum PSTs over the tuples (d - dist(u, v_1), ..., d - dist(u, v_t')).

#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sole/decomp.hpp"
#include "sole/engine.hpp"
#include "sole/multidim.hpp"

namespace sole {

struct GraphSoleOptions {
  Strategy strategy = Strategy::kDirect;
  // Added to every query corner coordinate. Nonzero values break the
  // structure on purpose; used to check that differential testing notices.
  Dist corner_offset = 0;
};

template <OrderedSemigroup S>
class GraphSole final : public SoleEngine<S> {
 public:
  using W = typename S::value_type;

  struct Placement {
    bool node_store;  // W_e rather than an edge store
    int node;         // e, or the child endpoint of the edge of T
    std::vector<Dist> coords;
  };

  struct Match {
    bool node_store;
    int node;
    FacilityId facility;
  };

  // Throws InputError when the decomposition fails validation.
  GraphSole(const Graph& g, SeparatorDecomposition c, GraphSoleOptions options = {})
      : vertex_count_(g.vertex_count()), decomposition_(std::move(c)), options_(options) {
    const auto report = validate_separator_decomposition(g, decomposition_);
    if (!report.ok) throw InputError("invalid decomposition: " + report.summary());
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto& e : decomposition_.edges) {
      pairs.push_back({static_cast<Vertex>(e.a), static_cast<Vertex>(e.b)});
    }
    centroid_ = build_centroid_tree(decomposition_.node_names.size(), pairs);

    const std::size_t nodes = centroid_.node_count();
    node_store_.resize(nodes);
    edge_store_.resize(nodes);
    for (int x = 0; x < static_cast<int>(nodes); ++x) {
      if (!centroid_.is_leaf(x)) {
        node_store_[x] = std::make_unique<MultiDimStore<S>>(bag_size(x));
      }
      if (centroid_.parent(x) != CentroidTree::kNone) {
        edge_store_[x] = std::make_unique<MultiDimStore<S>>(bag_size(centroid_.parent(x)));
      }
    }
    build_distance_tables(g);
  }

  void set_strategy(Strategy s) { options_.strategy = s; }
  Strategy strategy() const { return options_.strategy; }

  void add(Vertex v, FacilityId f, W w, Dist d) override {
    check_vertex(v);
    check_radius(d);
    if (homes_.contains(f)) throw std::logic_error("facility already placed");
    const auto& path = paths_[v];
    const std::size_t h = path.size() - 1;
    std::vector<Dist> r;
    for (std::size_t i = 0; i <= h; ++i) {
      coordinates(v, i, d, r);
      node_store_[path[i]]->insert(f, r, w);
      if (i < h) {
        edge_store_[sibling(path[i], path[i + 1])]->insert(f, r, w);
      } else {
        for (int side : {0, 1}) edge_store_[centroid_.child(path[i], side)]->insert(f, r, w);
      }
    }
    homes_.emplace(f, v);
  }

  void remove(Vertex v, FacilityId f) override {
    auto it = homes_.find(f);
    if (it == homes_.end() || it->second != v) {
      throw std::logic_error("facility is not placed on this vertex");
    }
    const auto& path = paths_[v];
    const std::size_t h = path.size() - 1;
    for (std::size_t i = 0; i <= h; ++i) {
      node_store_[path[i]]->erase(f);
      if (i < h) {
        edge_store_[sibling(path[i], path[i + 1])]->erase(f);
      } else {
        for (int side : {0, 1}) edge_store_[centroid_.child(path[i], side)]->erase(f);
      }
    }
    homes_.erase(it);
  }

  std::optional<W> sum(Vertex v, Dist d = 0) const override {
    check_vertex(v);
    check_radius(d);
    std::optional<W> acc;
    std::vector<Dist> q;
    for_each_query(v, d, q, [&](const MultiDimStore<S>& store, int, bool) {
      accumulate_into<S>(acc, store.complement_sum(q, options_.strategy));
    });
    return acc;
  }

  std::vector<Ranked<W>> top(Vertex v, std::size_t k, Dist d = 0) const override {
    check_vertex(v);
    check_radius(d);
    if (k == 0) return {};
    std::vector<Ranked<W>> candidates;
    std::vector<Dist> q;
    for_each_query(v, d, q, [&](const MultiDimStore<S>& store, int, bool) {
      auto part = store.complement_top_k(q, k, options_.strategy);
      candidates.insert(candidates.end(), part.begin(), part.end());
    });
    keep_top(candidates, k);
    return candidates;
  }

  std::size_t facility_count() const override { return homes_.size(); }

  std::vector<Match> trace(Vertex v, Dist d = 0) const {
    check_vertex(v);
    check_radius(d);
    std::vector<Match> out;
    std::vector<Dist> q;
    for_each_query(v, d, q, [&](const MultiDimStore<S>& store, int node, bool is_node_store) {
      for (FacilityId f : store.complement_report(q)) out.push_back({is_node_store, node, f});
    });
    return out;
  }

  // Query corners (q_1..q_t') used by sum/top at each path node, root first.
  std::vector<std::vector<Dist>> query_corners(Vertex v, Dist d = 0) const {
    check_vertex(v);
    std::vector<std::vector<Dist>> out;
    std::vector<Dist> q;
    for_each_query(v, d, q, [&](const MultiDimStore<S>&, int, bool) { out.push_back(q); });
    return out;
  }

  std::vector<Placement> placements(FacilityId f) const {
    std::vector<Placement> out;
    auto it = homes_.find(f);
    if (it == homes_.end()) return out;
    for (int x = 0; x < static_cast<int>(centroid_.node_count()); ++x) {
      if (node_store_[x] && node_store_[x]->contains(f)) {
        out.push_back({true, x, node_store_[x]->coords(f)});
      }
      if (edge_store_[x] && edge_store_[x]->contains(f)) {
        out.push_back({false, x, edge_store_[x]->coords(f)});
      }
    }
    return out;
  }

  const CentroidTree& centroid() const { return centroid_; }
  const SeparatorDecomposition& decomposition() const { return decomposition_; }
  const std::vector<int>& path(Vertex v) const { return paths_.at(v); }

  int node_of_cedge(std::size_t index) const { return centroid_.node_of_edge(index); }
  const std::vector<Vertex>& bag(int node) const {
    return decomposition_.edges[centroid_.edge_of(node)].bag;
  }

  std::size_t stored_tuple_count() const {
    std::size_t total = 0;
    for (std::size_t x = 0; x < centroid_.node_count(); ++x) {
      if (node_store_[x]) total += node_store_[x]->size();
      if (edge_store_[x]) total += edge_store_[x]->size();
    }
    return total;
  }

  // Stores holding f: 2p + 1 when the path to its home has p nodes.
  std::size_t store_count(FacilityId f) const { return placements(f).size(); }

  std::size_t distance_entry_count() const { return distance_entries_; }

  // dist(v, v_j) for the j-th bag vertex of the i-th node on v's path.
  Dist table_distance(Vertex v, std::size_t i, std::size_t j) const {
    return dist_[v][offsets_[v][i] + j];
  }

  void check_invariants() const {
    std::size_t expected = 0;
    for (const auto& [f, v] : homes_) expected += 2 * paths_[v].size() + 1;
    if (stored_tuple_count() != expected) throw std::logic_error("store count mismatch");
    for (std::size_t x = 0; x < centroid_.node_count(); ++x) {
      if (node_store_[x]) node_store_[x]->check_invariants();
      if (edge_store_[x]) edge_store_[x]->check_invariants();
    }
  }

 private:
  void check_vertex(Vertex v) const {
    if (v >= vertex_count_) throw InputError("unknown vertex id " + std::to_string(v));
  }

  unsigned bag_size(int node) const { return static_cast<unsigned>(bag(node).size()); }

  int sibling(int parent, int child) const {
    const int c0 = centroid_.child(parent, 0);
    return c0 == child ? centroid_.child(parent, 1) : c0;
  }

  void coordinates(Vertex v, std::size_t i, Dist d, std::vector<Dist>& out) const {
    const std::size_t t = bag_size(paths_[v][i]);
    out.resize(t);
    for (std::size_t j = 0; j < t; ++j) out[j] = d - table_distance(v, i, j);
  }

  // Calls fn(store, node, is_node_store) once per path node with `q` set to
  // the query corner: the on-path edge store above the home, W_e at it.
  template <class Fn>
  void for_each_query(Vertex v, Dist d, std::vector<Dist>& q, Fn&& fn) const {
    const auto& path = paths_[v];
    const std::size_t h = path.size() - 1;
    for (std::size_t i = 0; i <= h; ++i) {
      const std::size_t t = bag_size(path[i]);
      q.resize(t);
      for (std::size_t j = 0; j < t; ++j) q[j] = table_distance(v, i, j) - d + options_.corner_offset;
      if (i < h) {
        fn(*edge_store_[path[i + 1]], path[i + 1], false);
      } else {
        fn(*node_store_[path[i]], path[i], true);
      }
    }
  }

  // One Dijkstra per distinct bag vertex; every vertex keeps the distances
  // to the bags along its own path (the union of the D_e tables).
  void build_distance_tables(const Graph& g) {
    std::vector<Vertex> sources;
    for (const auto& e : decomposition_.edges) sources.insert(sources.end(), e.bag.begin(), e.bag.end());
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    const SourceDistanceTable table = all_pairs_from_sources(g, sources);

    paths_.resize(vertex_count_);
    dist_.resize(vertex_count_);
    offsets_.resize(vertex_count_);
    for (Vertex v = 0; v < vertex_count_; ++v) {
      paths_[v] = centroid_.path_from_root(centroid_.node_of_edge(decomposition_.home[v]));
      for (int node : paths_[v]) {
        offsets_[v].push_back(dist_[v].size());
        for (Vertex s : bag(node)) dist_[v].push_back(table.at(s, v));
      }
      distance_entries_ += dist_[v].size();
    }
  }

  std::size_t vertex_count_;
  SeparatorDecomposition decomposition_;
  GraphSoleOptions options_;
  CentroidTree centroid_;
  std::vector<std::unique_ptr<MultiDimStore<S>>> node_store_;
  std::vector<std::unique_ptr<MultiDimStore<S>>> edge_store_;
  std::vector<std::vector<int>> paths_;
  std::vector<std::vector<Dist>> dist_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::size_t distance_entries_ = 0;
  std::unordered_map<FacilityId, Vertex> homes_;
};

}  // namespace sole
