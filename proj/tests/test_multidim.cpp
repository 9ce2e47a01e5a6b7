#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sole/counters.hpp"
#include "sole/multidim.hpp"

using namespace sole;

namespace {

struct Point {
  FacilityId id;
  std::vector<Dist> c;
  std::int64_t w;
};

bool in_box(const Point& p, const std::vector<Interval>& box) {
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (p.c[j] < box[j].lo || p.c[j] > box[j].hi) return false;
  }
  return true;
}

bool in_complement(const Point& p, const std::vector<Dist>& q) {
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (p.c[j] >= q[j]) return true;
  }
  return false;
}

template <class Pred>
std::optional<std::int64_t> brute_sum(const std::vector<Point>& pts, Pred pred) {
  std::optional<std::int64_t> acc;
  for (const auto& p : pts) {
    if (pred(p)) acc = acc ? *acc + p.w : p.w;
  }
  return acc;
}

template <class Pred>
std::vector<Ranked<std::int64_t>> brute_top(const std::vector<Point>& pts, std::size_t k, Pred pred) {
  std::vector<Ranked<std::int64_t>> out;
  for (const auto& p : pts) {
    if (pred(p)) out.push_back({p.id, p.w});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return ranks_before(a, b); });
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, unsigned dims, Dist span) {
  std::vector<Point> pts;
  for (std::uint64_t i = 0; i < n; ++i) {
    Point p{FacilityId{i}, {}, static_cast<std::int64_t>(rng() % 50)};
    for (unsigned j = 0; j < dims; ++j) p.c.push_back(static_cast<Dist>(rng() % span) - span / 2);
    pts.push_back(p);
  }
  return pts;
}

std::vector<Dist> random_corner(std::mt19937_64& rng, unsigned dims, Dist span) {
  std::vector<Dist> q;
  for (unsigned j = 0; j < dims; ++j) q.push_back(static_cast<Dist>(rng() % span) - span / 2);
  return q;
}

}  // namespace

TEST_CASE("insert then delete leaves an empty store") {
  MultiDimStore<IntSum> s(2);
  const Dist c[] = {1, 2};
  s.insert(FacilityId{1}, c, 5);
  s.erase(FacilityId{1});
  CHECK(s.empty());
  CHECK(s.node_count() == 0);
  const Dist q[] = {kMinDist, kMinDist};
  CHECK_FALSE(s.complement_sum(q).has_value());
}

TEST_CASE("three points in two dimensions: every secondary holds its subtree") {
  MultiDimStore<IntSum> s(2);
  const Dist a[] = {1, 1}, b[] = {2, 3}, c[] = {4, 0};
  s.insert(FacilityId{1}, a, 5);
  s.insert(FacilityId{2}, b, 7);
  s.insert(FacilityId{3}, c, 2);
  s.check_invariants();
  // 3 leaves + 2 internal nodes on axis 0; secondaries of sizes 3 and 2.
  CHECK(s.node_count() == 5 + 5 + 3);

  const Interval box[] = {{1, 2}, {0, 3}};
  CHECK(s.box_sum(box) == 12);
  const Interval wide[] = {{1, 4}, {0, 3}};
  auto top = s.box_top_k(wide, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].weight == 7);
  CHECK(top[1].weight == 5);
}

TEST_CASE("empty boxes give empty answers") {
  MultiDimStore<IntSum> s(2);
  const Interval box[] = {{0, 10}, {0, 10}};
  CHECK_FALSE(s.box_sum(box).has_value());
  CHECK(s.box_top_k(box, 3).empty());
}

TEST_CASE("complement corner semantics") {
  MultiDimStore<IntSum> s(2);
  const Dist r[] = {2, 4};
  s.insert(FacilityId{1}, r, 10);
  const Dist q[] = {2, 4};
  CHECK(s.complement_sum(q) == 10);
  CHECK(s.complement_sum(q, Strategy::kBoxes) == 10);

  MultiDimStore<IntSum> z(2);
  const Dist origin[] = {0, 0};
  z.insert(FacilityId{1}, origin, 1);
  const Dist ones[] = {1, 1};
  CHECK_FALSE(z.complement_sum(ones).has_value());
}

TEST_CASE("boxes strategy on a hand example") {
  MultiDimStore<IntSum> s(2);
  const Dist a[] = {3, 0}, b[] = {0, 3}, c[] = {0, 0};
  s.insert(FacilityId{1}, a, 1);
  s.insert(FacilityId{2}, b, 2);
  s.insert(FacilityId{3}, c, 4);
  const Dist q[] = {1, 1};
  CHECK(s.complement_sum(q, Strategy::kBoxes) == 3);
  CHECK(s.complement_sum(q, Strategy::kDirect) == 3);
}

TEST_CASE("one-dimensional complement is a single suffix box") {
  const Dist q[] = {5};
  auto boxes = MultiDimStore<IntSum>::complement_boxes(q);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0][0].lo == 5);
  CHECK(boxes[0][0].hi == kMaxDist);
}

TEST_CASE("complement boxes are disjoint and cover the complement") {
  std::mt19937_64 rng(23);
  for (unsigned dims = 1; dims <= 4; ++dims) {
    for (int trial = 0; trial < 50; ++trial) {
      auto q = random_corner(rng, dims, 10);
      auto boxes = MultiDimStore<IntSum>::complement_boxes(q);
      for (const auto& p : random_points(rng, 200, dims, 12)) {
        int hits = 0;
        for (const auto& box : boxes) hits += in_box(p, box);
        CHECK(hits == (in_complement(p, q) ? 1 : 0));
      }
    }
  }
  const Dist low[] = {kMinDist, 0};
  CHECK(MultiDimStore<IntSum>::complement_boxes(low).size() == 1);
}

TEST_CASE("three-dimensional queries match brute force") {
  std::mt19937_64 rng(29);
  MultiDimStore<IntSum> s(3);
  auto pts = random_points(rng, 500, 3, 40);
  for (const auto& p : pts) s.insert(p.id, p.c, p.w);
  s.check_invariants();
  for (int trial = 0; trial < 100; ++trial) {
    auto q = random_corner(rng, 3, 44);
    const std::size_t k = 1 + rng() % 12;
    auto pred = [&](const Point& p) { return in_complement(p, q); };
    CHECK(s.complement_sum(q) == brute_sum(pts, pred));
    CHECK(s.complement_sum(q, Strategy::kBoxes) == brute_sum(pts, pred));
    CHECK(s.complement_top_k(q, k) == brute_top(pts, k, pred));
    CHECK(s.complement_top_k(q, k, Strategy::kBoxes) == brute_top(pts, k, pred));
    std::size_t expect = 0;
    for (const auto& p : pts) expect += pred(p);
    CHECK(s.complement_report(q).size() == expect);

    std::vector<Interval> box;
    for (int j = 0; j < 3; ++j) {
      Dist a = static_cast<Dist>(rng() % 44) - 22, b = static_cast<Dist>(rng() % 44) - 22;
      if (a > b) std::swap(a, b);
      box.push_back({a, b});
    }
    auto in = [&](const Point& p) { return in_box(p, box); };
    CHECK(s.box_sum(box) == brute_sum(pts, in));
    CHECK(s.box_top_k(box, k) == brute_top(pts, k, in));
  }
}

TEST_CASE("direct and boxes agree under random updates for t' in 1..3") {
  std::mt19937_64 rng(31);
  for (unsigned dims = 1; dims <= 3; ++dims) {
    MultiDimStore<IntSum> s(dims);
    std::vector<Point> live;
    std::uint64_t next = 0;
    for (int step = 0; step < 1000; ++step) {
      if (live.empty() || rng() % 3 != 0) {
        Point p = random_points(rng, 1, dims, 30)[0];
        p.id = FacilityId{next++};
        s.insert(p.id, p.c, p.w);
        live.push_back(p);
      } else {
        const std::size_t i = rng() % live.size();
        s.erase(live[i].id);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
      }
      auto q = random_corner(rng, dims, 34);
      const std::size_t k = 1 + rng() % 5;
      REQUIRE(s.complement_sum(q) == s.complement_sum(q, Strategy::kBoxes));
      REQUIRE(s.complement_top_k(q, k) == s.complement_top_k(q, k, Strategy::kBoxes));
    }
    s.check_invariants();
  }
}

TEST_CASE("node count stays within the range-tree size envelope") {
  std::mt19937_64 rng(37);
  for (unsigned dims = 1; dims <= 3; ++dims) {
    MultiDimStore<IntSum> s(dims);
    std::vector<Point> live;
    for (std::uint64_t i = 0; i < 1500; ++i) {
      Point p = random_points(rng, 1, dims, 1000)[0];
      p.id = FacilityId{i};
      s.insert(p.id, p.c, p.w);
      live.push_back(p);
      if (i % 5 == 4) {
        s.erase(live.front().id);
        live.erase(live.begin());
      }
    }
    const double n = static_cast<double>(s.size());
    const double levels = 1 + std::log(n) / std::log(1 / (1 - 0.29));
    CHECK(static_cast<double>(s.node_count()) <= 2 * n * std::pow(levels, dims - 1));
  }
}

TEST_CASE("amortized update work per operation grows like lg^3 m") {
  std::mt19937_64 rng(41);
  std::vector<double> normalized;
  for (std::size_t m : {256, 1024, 4096}) {
    MultiDimStore<IntSum> s(3);
    std::vector<Point> live;
    std::uint64_t next = 0;
    for (std::size_t i = 0; i < m; ++i) {
      Point p = random_points(rng, 1, 3, 1 << 20)[0];
      p.id = FacilityId{next++};
      s.insert(p.id, p.c, p.w);
      live.push_back(p);
    }
    reset_op_counters();
    const std::size_t ops = 2000;
    for (std::size_t i = 0; i < ops; ++i) {
      if (i % 2 == 0) {
        const std::size_t j = rng() % live.size();
        s.erase(live[j].id);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(j));
      } else {
        Point p = random_points(rng, 1, 3, 1 << 20)[0];
        p.id = FacilityId{next++};
        s.insert(p.id, p.c, p.w);
        live.push_back(p);
      }
    }
    const double lg = std::log2(static_cast<double>(m));
    normalized.push_back(static_cast<double>(op_counters().update_work) / ops / (lg * lg * lg));
  }
  MESSAGE("update work / lg^3 m: " << normalized[0] << " " << normalized[1] << " " << normalized[2]);
  CHECK(normalized.back() <= 2 * normalized.front());
}

TEST_CASE("a zero-dimensional store never matches") {
  MultiDimStore<IntSum> s(0);
  s.insert(FacilityId{1}, std::span<const Dist>{}, 3);
  CHECK(s.size() == 1);
  CHECK_FALSE(s.complement_sum(std::span<const Dist>{}).has_value());
  CHECK(s.complement_top_k(std::span<const Dist>{}, 2).empty());
  s.erase(FacilityId{1});
  CHECK(s.empty());
}
