#include <algorithm>
#include <random>

#include "doctest.h"
#include "sole/generators.hpp"
#include "sole/oracle.hpp"

using namespace sole;

namespace {

// Floyd-Warshall, kept separate from the Dijkstra the oracle uses.
std::vector<std::vector<Dist>> floyd(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const Dist inf = kMaxDist / 4;
  std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

Graph path_abc() {
  Graph g;
  for (const char* n : {"a", "b", "c"}) g.add_vertex(n);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2, 3);
  return g;
}

}  // namespace

TEST_CASE("path a-b-c worked example") {
  NaiveSole<IntSum> o(path_abc());
  o.add(0, FacilityId{1}, 10, 4);
  CHECK(o.sum(1) == 10);
  CHECK_FALSE(o.sum(2).has_value());
  CHECK(o.sum(2, 1) == 10);
  CHECK(o.top(1, 2) == std::vector<Ranked<std::int64_t>>{{FacilityId{1}, 10}});
  CHECK(o.report(1) == std::vector<FacilityId>{FacilityId{1}});
}

TEST_CASE("oracle folds in ascending id order") {
  NaiveSole<Concat> o(path_abc());
  o.add(2, FacilityId{7}, "z", 9);
  o.add(0, FacilityId{3}, "x", 9);
  o.add(1, FacilityId{5}, "y", 9);
  CHECK(o.sum(0) == std::string("xyz"));
}

TEST_CASE("oracle misuse") {
  NaiveSole<IntSum> o(path_abc());
  o.add(0, FacilityId{1}, 1, 1);
  CHECK_THROWS_AS(o.add(1, FacilityId{1}, 1, 1), std::logic_error);
  CHECK_THROWS_AS(o.remove(1, FacilityId{1}), std::logic_error);
  CHECK_THROWS_AS(o.sum(9), InputError);
  CHECK_THROWS_AS(o.add(0, FacilityId{2}, 1, -3), InputError);
  o.remove(0, FacilityId{1});
  CHECK(o.facility_count() == 0);
}

TEST_CASE("oracle agrees with an independent all-pairs scan") {
  Rng rng(401);
  for (int instance = 0; instance < 10; ++instance) {
    const auto inst = random_series_parallel_instance(rng, 3 + rng() % 30, 15);
    const auto d = floyd(inst.graph);
    NaiveSole<IntSum> o(inst.graph);
    struct P {
      Vertex v;
      std::int64_t w;
      Dist r;
    };
    std::vector<P> placed;
    const std::size_t n = inst.graph.vertex_count();
    for (std::uint64_t i = 0; i < 25; ++i) {
      P p{static_cast<Vertex>(rng() % n), static_cast<std::int64_t>(rng() % 50), static_cast<Dist>(rng() % 20)};
      o.add(p.v, FacilityId{i}, p.w, p.r);
      placed.push_back(p);
    }
    for (Vertex v = 0; v < n; ++v) {
      CHECK(o.distance(0, v) == d[0][v]);
      for (Dist q : {0, 3, 9}) {
        std::optional<std::int64_t> expect;
        std::vector<FacilityId> ids;
        for (std::size_t i = 0; i < placed.size(); ++i) {
          if (d[placed[i].v][v] > q + placed[i].r) continue;
          expect = expect.value_or(0) + placed[i].w;
          ids.push_back(FacilityId{i});
        }
        CHECK(o.sum(v, q) == expect);
        CHECK(o.report(v, q) == ids);
        const auto top = o.top(v, 3, q);
        CHECK(top.size() == std::min<std::size_t>(3, ids.size()));
        for (std::size_t i = 1; i < top.size(); ++i) CHECK(ranks_before(top[i - 1], top[i]));
      }
    }
  }
}
