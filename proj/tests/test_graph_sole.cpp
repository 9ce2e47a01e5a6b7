#include <algorithm>
#include <random>

#include "doctest.h"
#include "sole/generators.hpp"
#include "sole/graph_sole.hpp"
#include "sole/oracle.hpp"
#include "sole/tree_sole.hpp"

using namespace sole;

namespace {

struct Fig2 {
  Graph g;
  SeparatorDecomposition c;
};

Fig2 fig2() {
  Fig2 out{load_graph(std::string(SOLE_TEST_DATA) + "/fig2_graph.txt"), {}};
  out.c = load_decomposition(std::string(SOLE_TEST_DATA) + "/fig2_decomp.txt", out.g);
  return out;
}

template <class S>
void run_against_oracle(const Graph& g, const SeparatorDecomposition& c, Rng& rng, int steps) {
  GraphSole<S> s(g, c);
  NaiveSole<S> oracle(g);
  const std::size_t n = g.vertex_count();
  std::vector<std::pair<FacilityId, Vertex>> live;
  std::uint64_t next = 0;
  for (int step = 0; step < steps; ++step) {
    const auto op = rng() % 10;
    if (op < 4 || live.empty()) {
      const Vertex v = static_cast<Vertex>(rng() % n);
      const FacilityId f{next++};
      const std::int64_t w = static_cast<std::int64_t>(rng() % 100);
      const Dist d = static_cast<Dist>(rng() % 40);
      s.add(v, f, w, d);
      oracle.add(v, f, w, d);
      live.push_back({f, v});
    } else if (op < 6) {
      const std::size_t i = rng() % live.size();
      s.remove(live[i].second, live[i].first);
      oracle.remove(live[i].second, live[i].first);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      const Vertex v = static_cast<Vertex>(rng() % n);
      const Dist d = static_cast<Dist>(rng() % 40);
      const std::size_t k = rng() % 6;
      s.set_strategy(Strategy::kDirect);
      REQUIRE(s.sum(v, d) == oracle.sum(v, d));
      REQUIRE(s.top(v, k, d) == oracle.top(v, k, d));
      s.set_strategy(Strategy::kBoxes);
      REQUIRE(s.sum(v, d) == oracle.sum(v, d));
      REQUIRE(s.top(v, k, d) == oracle.top(v, k, d));
      std::vector<FacilityId> traced;
      for (const auto& m : s.trace(v, d)) traced.push_back(m.facility);
      std::sort(traced.begin(), traced.end());
      REQUIRE(traced == oracle.report(v, d));
    }
  }
  s.check_invariants();
}

}  // namespace

TEST_CASE("fig2: tree shape, stored tuples and query corners") {
  const Fig2 in = fig2();
  GraphSole<IntSum> s(in.g, in.c);
  const auto& t = s.centroid();
  const int e4 = s.node_of_cedge(3), e6 = s.node_of_cedge(5), e9 = s.node_of_cedge(8);
  const int e13 = s.node_of_cedge(12);
  CHECK(t.root() == e9);
  CHECK(t.parent(e13) == e9);
  CHECK(t.parent(e4) == e9);

  const Vertex v6 = in.g.vertex("v6"), v4 = in.g.vertex("v4");
  const FacilityId f{1};
  s.add(v6, f, 10, 5);
  const auto& path = s.path(v6);
  REQUIRE(path.front() == e9);
  REQUIRE(path.back() == e6);
  REQUIRE(std::find(path.begin(), path.end(), e4) != path.end());

  auto coords_at = [&](bool node_store, int node) -> std::vector<Dist> {
    for (const auto& p : s.placements(f)) {
      if (p.node_store == node_store && p.node == node) return p.coords;
    }
    return {};
  };
  const std::vector<Dist> c25{2, 5}, c24{2, 4};
  CHECK(coords_at(true, e6) == c25);
  CHECK(coords_at(false, t.child(e6, 0)) == c25);
  CHECK(coords_at(false, t.child(e6, 1)) == c25);
  auto off_path = [&](int node) {
    const auto it = std::find(path.begin(), path.end(), node);
    const int next = *(it + 1);
    return t.child(node, 0) == next ? t.child(node, 1) : t.child(node, 0);
  };
  CHECK(coords_at(false, off_path(e4)) == c24);
  CHECK(coords_at(false, off_path(e9)) == c24);
  CHECK(off_path(e9) == e13);
  CHECK(coords_at(true, e4) == c24);
  CHECK(coords_at(true, e9) == c24);

  CHECK(s.sum(v4, 0) == 10);
  const auto corners = s.query_corners(v4, 0);
  REQUIRE(corners.size() == 2);
  CHECK(corners[0] == c24);
  CHECK(corners[1] == std::vector<Dist>{1, 0});
  const auto trace = s.trace(v4, 0);
  REQUIRE(trace.size() == 1);
  CHECK_FALSE(trace[0].node_store);
  CHECK(trace[0].node == e13);
  const auto top = s.top(v4, 1, 0);
  REQUIRE(top.size() == 1);
  CHECK(top[0].id == f);

  s.remove(v6, f);
  CHECK(s.stored_tuple_count() == 0);
}

TEST_CASE("fig2: distance tables agree with Dijkstra") {
  const Fig2 in = fig2();
  GraphSole<IntSum> s(in.g, in.c);
  for (Vertex v = 0; v < in.g.vertex_count(); ++v) {
    const auto dist = dijkstra(in.g, v);
    const auto& path = s.path(v);
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto& bag = s.bag(path[i]);
      for (std::size_t j = 0; j < bag.size(); ++j) CHECK(s.table_distance(v, i, j) == dist[bag[j]]);
    }
  }
}

TEST_CASE("single-vertex graph with a one-edge decomposition") {
  Graph g;
  g.add_vertex("a");
  SeparatorDecomposition c;
  c.node_names = {"p", "q"};
  c.edges.push_back({0, 1, {0}});
  c.assign_default_homes(1);
  GraphSole<IntSum> s(g, c);
  CHECK_FALSE(s.sum(0).has_value());
  s.add(0, FacilityId{1}, 4, 0);
  CHECK(s.sum(0) == 4);
  CHECK(s.top(0, 5) == std::vector<Ranked<std::int64_t>>{{FacilityId{1}, 4}});
}

TEST_CASE("invalid decomposition is rejected") {
  Fig2 in = fig2();
  in.c.edges[8].bag = {in.g.vertex("v1")};
  CHECK_THROWS_AS(GraphSole<IntSum>(in.g, in.c), InputError);
}

TEST_CASE("fig2 graph: random workload matches the oracle") {
  const Fig2 in = fig2();
  Rng rng(211);
  run_against_oracle<IntSum>(in.g, in.c, rng, 600);
}

TEST_CASE("random partial 2-trees match the oracle under both strategies") {
  Rng rng(223);
  for (int instance = 0; instance < 6; ++instance) {
    const std::size_t n = 3 + rng() % 58;
    const auto inst = random_partial_two_tree_instance(rng, n, 20);
    CHECK(inst.decomposition.width() <= 3);
    run_against_oracle<IntSum>(inst.graph, inst.decomposition, rng, 400);
  }
}

TEST_CASE("random series-parallel graphs match the oracle") {
  Rng rng(227);
  for (int instance = 0; instance < 5; ++instance) {
    const std::size_t n = 3 + rng() % 50;
    const auto inst = random_series_parallel_instance(rng, n, 20);
    CHECK(inst.decomposition.width() <= 2);
    run_against_oracle<IntSum>(inst.graph, inst.decomposition, rng, 400);
  }
}

TEST_CASE("min and max weights on partial 2-trees") {
  Rng rng(229);
  const auto inst = random_partial_two_tree_instance(rng, 40, 20);
  run_against_oracle<IntMin>(inst.graph, inst.decomposition, rng, 300);
  run_against_oracle<IntMax>(inst.graph, inst.decomposition, rng, 300);
}

TEST_CASE("on a tree's own 1-separator decomposition the answers equal the tree structure") {
  Rng rng(233);
  for (int instance = 0; instance < 4; ++instance) {
    const Graph g = random_tree(rng, 10 + rng() % 60, 3, 12);
    const auto c = tree_separator_decomposition(g);
    REQUIRE(validate_separator_decomposition(g, c).ok);
    CHECK(c.width() == 1);
    GraphSole<IntSum> gs(g, c);
    TreeSole<IntSum> ts(g);
    for (std::uint64_t i = 0; i < 100; ++i) {
      const Vertex v = static_cast<Vertex>(rng() % g.vertex_count());
      const std::int64_t w = static_cast<std::int64_t>(rng() % 50);
      const Dist d = static_cast<Dist>(rng() % 30);
      gs.add(v, FacilityId{i}, w, d);
      ts.add(v, FacilityId{i}, w, d);
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      for (Dist d : {0, 4, 11}) {
        CHECK(gs.sum(v, d) == ts.sum(v, d));
        CHECK(gs.top(v, 3, d) == ts.top(v, 3, d));
      }
    }
  }
}

TEST_CASE("add then remove everything leaves all stores empty") {
  Rng rng(239);
  const auto inst = random_series_parallel_instance(rng, 30, 9);
  GraphSole<IntSum> s(inst.graph, inst.decomposition);
  for (std::uint64_t i = 0; i < 50; ++i) s.add(static_cast<Vertex>(i % 30), FacilityId{i}, 1, 3);
  for (std::uint64_t i = 0; i < 50; ++i) s.remove(static_cast<Vertex>(i % 30), FacilityId{i});
  CHECK(s.stored_tuple_count() == 0);
  CHECK(s.facility_count() == 0);
}

TEST_CASE("a shifted query corner is caught by the oracle") {
  const Fig2 in = fig2();
  GraphSoleOptions broken;
  broken.corner_offset = 1;
  GraphSole<IntSum> s(in.g, in.c, broken);
  s.add(in.g.vertex("v6"), FacilityId{1}, 10, 5);
  CHECK_FALSE(s.sum(in.g.vertex("v4"), 0).has_value());
}
