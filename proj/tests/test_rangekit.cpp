#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "sole/counters.hpp"
#include "sole/rangekit.hpp"

using namespace sole;

namespace {

struct Point {
  FacilityId id;
  Dist x;
  std::int64_t w;
};

std::vector<Ranked<std::int64_t>> brute_top(const std::vector<Point>& pts, Dist lo, Dist hi,
                                            std::size_t k) {
  std::vector<Ranked<std::int64_t>> out;
  for (const auto& p : pts) {
    if (lo <= p.x && p.x <= hi) out.push_back({p.id, p.w});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return ranks_before(a, b); });
  if (out.size() > k) out.resize(k);
  return out;
}

template <class S>
std::optional<std::int64_t> brute_sum(std::vector<Point> pts, Dist lo, Dist hi) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.id < b.id;
  });
  std::optional<std::int64_t> acc;
  for (const auto& p : pts) {
    if (lo <= p.x && p.x <= hi) accumulate_into<S>(acc, std::optional<std::int64_t>(p.w));
  }
  return acc;
}

}  // namespace

TEST_CASE("pst insert then delete leaves an empty tree") {
  Pst<std::int64_t> t;
  t.insert(FacilityId{1}, 4, 7);
  t.erase(FacilityId{1});
  CHECK(t.empty());
  CHECK(t.top_k(kMinDist, kMaxDist, 3).empty());
  t.check_invariants();
}

TEST_CASE("pst root holds the heaviest point") {
  Pst<std::int64_t> t;
  t.insert(FacilityId{1}, 1, 5);
  t.insert(FacilityId{2}, 2, 9);
  t.insert(FacilityId{3}, 3, 1);
  REQUIRE(t.root_point().has_value());
  CHECK(t.root_point()->weight == 9);
  t.check_invariants();
}

TEST_CASE("pst top-k small cases") {
  Pst<std::int64_t> t;
  t.insert(FacilityId{1}, 1, 5);
  t.insert(FacilityId{2}, 2, 9);
  t.insert(FacilityId{3}, 3, 1);
  CHECK(t.top_k(1, 2, 0).empty());
  auto top = t.top_k(1, 2, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0].id == FacilityId{2});
  CHECK(top[0].weight == 9);
}

TEST_CASE("pst misuse raises logic errors") {
  Pst<std::int64_t> t;
  t.insert(FacilityId{1}, 1, 5);
  CHECK_THROWS_AS(t.insert(FacilityId{1}, 2, 3), std::logic_error);
  CHECK_THROWS_AS(t.erase(FacilityId{9}), std::logic_error);
}

TEST_CASE("pst survives 1000 random updates with invariants intact") {
  std::mt19937_64 rng(11);
  Pst<std::int64_t> t;
  std::vector<Point> live;
  std::uint64_t next = 0;
  for (int step = 0; step < 1000; ++step) {
    if (live.empty() || rng() % 3 != 0) {
      Point p{FacilityId{next++}, static_cast<Dist>(rng() % 50), static_cast<std::int64_t>(rng() % 20)};
      t.insert(p.id, p.x, p.w);
      live.push_back(p);
    } else {
      const std::size_t i = rng() % live.size();
      t.erase(live[i].id);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
    }
    t.check_invariants();
    REQUIRE(t.size() == live.size());
  }
}

TEST_CASE("pst top-k matches sort-and-filter on 500 points") {
  std::mt19937_64 rng(5);
  Pst<std::int64_t> t;
  std::vector<Point> pts;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Point p{FacilityId{i}, static_cast<Dist>(rng() % 300), static_cast<std::int64_t>(rng() % 40)};
    t.insert(p.id, p.x, p.w);
    pts.push_back(p);
  }
  t.check_invariants();
  for (int q = 0; q < 100; ++q) {
    Dist a = static_cast<Dist>(rng() % 320) - 10, b = static_cast<Dist>(rng() % 320) - 10;
    if (a > b) std::swap(a, b);
    const std::size_t k = rng() % 25;
    reset_op_counters();
    auto got = t.top_k(a, b, k);
    const auto& c = op_counters();
    CHECK(got == brute_top(pts, a, b, k));
    CHECK(c.max_candidate_heap <= k + 2 * static_cast<std::uint64_t>(t.height()) + c.heap_seeds);
  }
}

TEST_CASE("range sum under addition and min") {
  RangeSumTree<IntSum> s;
  s.insert(FacilityId{1}, 1, 10);
  s.insert(FacilityId{2}, 4, 7);
  CHECK(s.range_sum(0, 5) == 17);
  CHECK_FALSE(s.range_sum(5, 9).has_value());
  RangeSumTree<IntMin> m;
  m.insert(FacilityId{1}, 1, 10);
  m.insert(FacilityId{2}, 4, 7);
  CHECK(m.range_sum(0, 5) == 7);
}

TEST_CASE("range sum folds in ascending key order") {
  RangeSumTree<Concat> s;
  std::mt19937_64 rng(3);
  std::vector<std::pair<Dist, std::string>> ref;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dist x = static_cast<Dist>(rng() % 1000) * 1000 + static_cast<Dist>(i);
    std::string w(1, static_cast<char>('a' + rng() % 26));
    s.insert(FacilityId{i}, x, w);
    ref.emplace_back(x, w);
  }
  std::sort(ref.begin(), ref.end());
  s.check_invariants();
  for (int q = 0; q < 50; ++q) {
    Dist a = static_cast<Dist>(rng() % 1000000), b = static_cast<Dist>(rng() % 1000000);
    if (a > b) std::swap(a, b);
    std::optional<std::string> expect;
    for (const auto& [x, w] : ref) {
      if (a <= x && x <= b) expect = expect ? *expect + w : w;
    }
    CHECK(s.range_sum(a, b) == expect);
  }
}

TEST_CASE("range-sum pst suffix queries are inclusive") {
  RangeSumPst<IntSum> s;
  s.insert(FacilityId{1}, 8, 3);
  CHECK(s.suffix_sum(8) == 3);
  RangeSumPst<IntSum> t;
  t.insert(FacilityId{1}, 7, 3);
  CHECK_FALSE(t.suffix_sum(8).has_value());
}

TEST_CASE("range-sum pst matches brute force on random updates and suffixes") {
  std::mt19937_64 rng(17);
  RangeSumPst<IntSum> s;
  std::vector<Point> live;
  std::uint64_t next = 0;
  for (int step = 0; step < 600; ++step) {
    if (live.empty() || rng() % 4 != 0) {
      Point p{FacilityId{next++}, static_cast<Dist>(rng() % 60) - 30, static_cast<std::int64_t>(rng() % 9)};
      s.insert(p.id, p.x, p.w);
      live.push_back(p);
    } else {
      const std::size_t i = rng() % live.size();
      s.erase(live[i].id);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  s.check_invariants();
  for (int q = 0; q < 300; ++q) {
    const Dist x = static_cast<Dist>(rng() % 70) - 35;
    for (std::size_t k : {1, 3, 10}) {
      CHECK(s.suffix_top_k(x, k) == brute_top(live, x, kMaxDist, k));
    }
    CHECK(s.suffix_sum(x) == brute_sum<IntSum>(live, x, kMaxDist));
    auto ids = s.suffix_report(x);
    std::size_t expect = 0;
    for (const auto& p : live) expect += p.x >= x;
    CHECK(ids.size() == expect);
  }
}
