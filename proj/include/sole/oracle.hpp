#pragma once

// Brute-force reference: scan every live facility and compare distances.

#include <map>
#include <stdexcept>
#include <vector>

#include "sole/engine.hpp"
#include "sole/graph.hpp"

namespace sole {

template <OrderedSemigroup S>
class NaiveSole final : public SoleEngine<S> {
 public:
  using W = typename S::value_type;

  explicit NaiveSole(const Graph& g) : graph_(g), rows_(g.vertex_count()) {}

  void add(Vertex v, FacilityId f, W w, Dist d) override {
    graph_.check_vertex(v);
    check_radius(d);
    if (live_.contains(f)) throw std::logic_error("facility already placed");
    live_.emplace(f, Placed{v, std::move(w), d});
  }

  void remove(Vertex v, FacilityId f) override {
    auto it = live_.find(f);
    if (it == live_.end() || it->second.home != v) {
      throw std::logic_error("facility is not placed on this vertex");
    }
    live_.erase(it);
  }

  // Folded in ascending facility id.
  std::optional<W> sum(Vertex v, Dist d = 0) const override {
    check_query(v, d);
    std::optional<W> acc;
    for (const auto& [f, p] : live_) {
      if (affects(p, v, d)) accumulate_into<S>(acc, std::optional<W>(p.weight));
    }
    return acc;
  }

  std::vector<Ranked<W>> top(Vertex v, std::size_t k, Dist d = 0) const override {
    check_query(v, d);
    std::vector<Ranked<W>> out;
    for (const auto& [f, p] : live_) {
      if (affects(p, v, d)) out.push_back({f, p.weight});
    }
    keep_top(out, k);
    return out;
  }

  // Ids of the facilities affecting (v, d), ascending.
  std::vector<FacilityId> report(Vertex v, Dist d = 0) const {
    check_query(v, d);
    std::vector<FacilityId> out;
    for (const auto& [f, p] : live_) {
      if (affects(p, v, d)) out.push_back(f);
    }
    return out;
  }

  std::size_t facility_count() const override { return live_.size(); }

  Dist distance(Vertex u, Vertex v) const { return row(u)[v]; }

 private:
  struct Placed {
    Vertex home;
    W weight;
    Dist radius;
  };

  void check_query(Vertex v, Dist d) const {
    graph_.check_vertex(v);
    check_radius(d);
  }

  const std::vector<Dist>& row(Vertex u) const {
    if (rows_[u].empty()) rows_[u] = dijkstra(graph_, u);
    return rows_[u];
  }

  bool affects(const Placed& p, Vertex v, Dist d) const { return row(p.home)[v] <= d + p.radius; }

  Graph graph_;
  mutable std::vector<std::vector<Dist>> rows_;
  std::map<FacilityId, Placed> live_;
};

}  // namespace sole
