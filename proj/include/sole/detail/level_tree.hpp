#pragma once

// One balancing engine for every search tree in the library.
//
// LevelTree is a leaf-oriented BB[alpha] tree over points drawn from a shared
// TuplePool, ordered by (coords[axis], id). Depending on the template flags a
// node also carries
//   - kSum:  the semigroup total of the weights below it (left-to-right fold);
//   - kHeap: one "sifted up" point, making the tree a priority search tree
//            on weight (heap order: heavier first, then smaller id);
// and, when axis + 1 < dims, every internal node owns a LevelTree over the
// same points for the next axis. That last part turns a stack of these into
// a multi-level range tree in which every level is a range-sum PST.
//
// Updates rebuild the highest node that would fall out of balance; rebuilt
// subtrees (with all their secondary trees) are built from sorted input in
// one pass, so updates are amortized O(lg^d n).

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sole/core.hpp"
#include "sole/counters.hpp"
#include "sole/semigroup.hpp"

namespace sole::detail {

using Slot = std::uint32_t;
inline constexpr Slot kNoSlot = UINT32_MAX;

template <class W>
struct Tuple {
  std::array<Dist, kMaxDimensions> coords{};
  FacilityId id;
  W weight;
};

template <class W>
class TuplePool {
 public:
  Slot add(Tuple<W> t) {
    if (!free_.empty()) {
      const Slot s = free_.back();
      free_.pop_back();
      items_[s] = std::move(t);
      return s;
    }
    items_.push_back(std::move(t));
    return static_cast<Slot>(items_.size() - 1);
  }
  void release(Slot s) { free_.push_back(s); }
  const Tuple<W>& operator[](Slot s) const { return items_[s]; }

 private:
  std::vector<Tuple<W>> items_;
  std::vector<Slot> free_;
};

// Closed interval; use kMinDist / kMaxDist for unbounded sides.
struct Interval {
  Dist lo = kMinDist;
  Dist hi = kMaxDist;
};

// BB[alpha] with alpha = 0.29: each child holds at least 29% of the leaves.
inline constexpr std::uint64_t kAlphaPercent = 29;

inline bool weight_balanced(std::uint64_t a, std::uint64_t b) {
  return 100 * std::min(a, b) >= kAlphaPercent * (a + b);
}

template <Semigroup S, bool kHeap, bool kSum>
class LevelTree {
 public:
  using W = typename S::value_type;
  using Pool = TuplePool<W>;

  LevelTree(const Pool* pool, unsigned axis, unsigned dims)
      : pool_(pool), axis_(axis), dims_(dims) {
    assert(axis < dims && dims <= kMaxDimensions);
  }

  LevelTree(const LevelTree&) = delete;
  LevelTree& operator=(const LevelTree&) = delete;

  std::size_t size() const { return root_ == kNil ? 0 : nodes_[root_].size; }
  bool empty() const { return root_ == kNil; }
  unsigned axis() const { return axis_; }

  int height() const {
    if (root_ == kNil) return -1;
    int best = 0;
    std::vector<std::pair<NodeIndex, int>> stack{{root_, 0}};
    while (!stack.empty()) {
      auto [n, depth] = stack.back();
      stack.pop_back();
      best = std::max(best, depth);
      if (!nodes_[n].leaf()) {
        stack.push_back({nodes_[n].left, depth + 1});
        stack.push_back({nodes_[n].right, depth + 1});
      }
    }
    return best;
  }

  // Nodes in this tree and in all secondary trees below it.
  std::size_t node_count() const {
    std::size_t total = nodes_.size() - free_nodes_.size();
    for (const Node& n : nodes_) {
      if (n.secondary) total += n.secondary->node_count();
    }
    return total;
  }

  std::optional<W> total() const
    requires kSum
  {
    if (root_ == kNil) return std::nullopt;
    return nodes_[root_].sum;
  }

  // ---------------------------------------------------------------- updates

  void insert(Slot s) {
    ++op_counters().update_work;
    if (root_ == kNil) {
      root_ = make_leaf(s, true);
      return;
    }
    std::vector<NodeIndex> path;
    NodeIndex n = root_;
    while (!nodes_[n].leaf()) {
      path.push_back(n);
      n = child_toward(n, s);
    }
    const NodeIndex leaf = n;

    std::size_t unbalanced = path.size();
    for (std::size_t i = 0; i < path.size(); ++i) {
      const NodeIndex below = i + 1 < path.size() ? path[i + 1] : leaf;
      const NodeIndex other = sibling(path[i], below);
      if (!weight_balanced(nodes_[below].size + 1, nodes_[other].size)) {
        unbalanced = i;
        break;
      }
    }

    for (std::size_t i = 0; i < unbalanced; ++i) {
      ++op_counters().update_work;
      if (nodes_[path[i]].secondary) nodes_[path[i]].secondary->insert(s);
    }

    if (unbalanced < path.size()) {
      const NodeIndex rebuilt = rebuild(path[unbalanced], s, kNoSlot);
      attach(unbalanced == 0 ? kNil : path[unbalanced - 1], path[unbalanced], rebuilt);
      path.resize(unbalanced);
    } else {
      const NodeIndex fresh = make_leaf(s, false);
      const NodeIndex joined = new_node();
      const bool fresh_first = key_less(s, nodes_[leaf].lo);
      nodes_[joined].left = fresh_first ? fresh : leaf;
      nodes_[joined].right = fresh_first ? leaf : fresh;
      nodes_[joined].heap = nodes_[leaf].heap;
      nodes_[leaf].heap = kNoSlot;
      pull(joined);
      if (has_secondary()) {
        std::vector<Slot> pair{nodes_[leaf].lo, s};
        if (secondary_key_less(pair[1], pair[0])) std::swap(pair[0], pair[1]);
        nodes_[joined].secondary = make_secondary(pair);
      }
      attach(path.empty() ? kNil : path.back(), leaf, joined);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) pull(*it);

    if constexpr (kHeap) sift(root_, s);
  }

  void erase(Slot s) {
    ++op_counters().update_work;
    if (root_ == kNil) throw std::logic_error("erase from empty tree");
    if constexpr (kHeap) heap_remove(s);

    std::vector<NodeIndex> path;
    NodeIndex n = root_;
    while (!nodes_[n].leaf()) {
      path.push_back(n);
      n = child_toward(n, s);
    }
    if (nodes_[n].lo != s) throw std::logic_error("erase of a point not in the tree");
    const NodeIndex leaf = n;
    if (path.empty()) {
      free_node(leaf);
      root_ = kNil;
      return;
    }

    // Ancestors of the leaf's parent each lose one leaf; the parent itself
    // is spliced out.
    std::size_t unbalanced = path.size();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const NodeIndex below = path[i + 1];
      const NodeIndex other = sibling(path[i], below);
      if (!weight_balanced(nodes_[below].size - 1, nodes_[other].size)) {
        unbalanced = i;
        break;
      }
    }

    const std::size_t touched = std::min(unbalanced, path.size() - 1);
    for (std::size_t i = 0; i < touched; ++i) {
      ++op_counters().update_work;
      if (nodes_[path[i]].secondary) nodes_[path[i]].secondary->erase(s);
    }

    if (unbalanced < path.size()) {
      const NodeIndex rebuilt = rebuild(path[unbalanced], kNoSlot, s);
      attach(unbalanced == 0 ? kNil : path[unbalanced - 1], path[unbalanced], rebuilt);
      path.resize(unbalanced);
    } else {
      const NodeIndex parent = path.back();
      const NodeIndex keep = sibling(parent, leaf);
      const Slot carried = nodes_[parent].heap;
      path.pop_back();
      attach(path.empty() ? kNil : path.back(), parent, keep);
      free_node(leaf);
      free_node(parent);
      if constexpr (kHeap) {
        if (carried != kNoSlot) sift(keep, carried);
      }
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) pull(*it);
  }

  // Replaces the contents with `sorted` (ascending by this axis' key).
  void assign_sorted(std::span<const Slot> sorted) {
    clear();
    if (sorted.empty()) return;
    root_ = build(sorted, nullptr).node;
  }

  void clear() {
    nodes_.clear();
    free_nodes_.clear();
    root_ = kNil;
  }

  // ---------------------------------------------------------------- sums

  // Fold of the weights with coords[axis] in [lo, hi], ascending key order.
  void range_sum_into(Dist lo, Dist hi, std::optional<W>& acc) const
    requires kSum
  {
    if (root_ != kNil) range_sum_rec(root_, lo, hi, acc);
  }

  // `box` is indexed by absolute axis and must cover axes [axis, dims).
  void box_sum_into(std::span<const Interval> box, std::optional<W>& acc) const
    requires kSum
  {
    if (root_ != kNil) box_sum_rec(root_, box, acc);
  }

  // Points with coords[j] >= corner[j] for some j in [axis, dims).
  void complement_sum_into(std::span<const Dist> corner, std::optional<W>& acc) const
    requires kSum
  {
    if (root_ != kNil) complement_sum_rec(root_, corner, acc);
  }

  // ---------------------------------------------------------------- top-k

  // Heaviest k points with coords[axis] in [lo, hi]; this axis only.
  std::vector<Slot> range_top_k(Dist lo, Dist hi, std::size_t k) const
    requires kHeap
  {
    std::vector<Slot> out;
    if (root_ == kNil || k == 0) return out;
    std::vector<Candidate> heap;
    range_seed(root_, lo, hi, heap);
    drain(heap, k, out);
    return out;
  }

  std::vector<Slot> box_top_k(std::span<const Interval> box, std::size_t k) const
    requires kHeap
  {
    if (root_ == kNil || k == 0) return {};
    if (last()) return range_top_k(box[axis_].lo, box[axis_].hi, k);
    std::vector<Slot> candidates;
    box_top_k_rec(root_, box, k, candidates);
    select_top(candidates, k);
    return candidates;
  }

  // One range top-k on [q, inf) over this axis' heap, plus recursive
  // complement queries on the secondary trees hanging left of the q path.
  std::vector<Slot> complement_top_k(std::span<const Dist> corner, std::size_t k) const
    requires kHeap
  {
    if (root_ == kNil || k == 0) return {};
    std::vector<Candidate> heap;
    std::vector<Slot> candidates;
    complement_seed(root_, corner, k, heap, candidates);
    drain(heap, k, candidates);
    select_top(candidates, k);
    return candidates;
  }

  // ---------------------------------------------------------------- reporting

  void complement_report(std::span<const Dist> corner, std::vector<Slot>& out) const {
    if (root_ != kNil) complement_report_rec(root_, corner, out);
  }

  void for_each_point(std::vector<Slot>& out) const {
    if (root_ != kNil) collect_leaves(root_, out);
  }

  // Heap point stored at the root, if any.
  std::optional<Slot> root_heap_point() const {
    if (root_ == kNil || nodes_[root_].heap == kNoSlot) return std::nullopt;
    return nodes_[root_].heap;
  }

  // Throws std::logic_error describing the first broken invariant.
  void check_invariants() const {
    if (root_ == kNil) return;
    std::vector<Slot> leaves;
    collect_leaves(root_, leaves);
    for (std::size_t i = 1; i < leaves.size(); ++i) {
      if (!key_less(leaves[i - 1], leaves[i])) fail("leaves not strictly sorted");
    }
    check_node(root_);
    if constexpr (kHeap) {
      std::vector<Slot> stored;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (is_live(static_cast<NodeIndex>(i)) && nodes_[i].heap != kNoSlot) {
          stored.push_back(nodes_[i].heap);
        }
      }
      std::sort(stored.begin(), stored.end());
      std::vector<Slot> expected = leaves;
      std::sort(expected.begin(), expected.end());
      if (stored != expected) fail("heap does not hold every point exactly once");
    }
  }

 private:
  using NodeIndex = std::int32_t;
  static constexpr NodeIndex kNil = -1;

  struct Node {
    NodeIndex left = kNil;
    NodeIndex right = kNil;
    std::uint32_t size = 1;
    Slot lo = kNoSlot;  // leftmost leaf point
    Slot hi = kNoSlot;  // rightmost leaf point
    Slot heap = kNoSlot;
    std::optional<W> sum;
    std::unique_ptr<LevelTree> secondary;
    bool free = false;

    bool leaf() const { return left == kNil; }
  };

  struct Candidate {
    Slot slot;
    NodeIndex node;  // kNil: not expandable
  };

  struct Built {
    NodeIndex node;
    std::vector<Slot> by_next;  // subtree points sorted for the next axis
  };

  bool last() const { return axis_ + 1 == dims_; }
  bool has_secondary() const { return !last(); }
  bool is_live(NodeIndex n) const { return !nodes_[n].free; }

  const Tuple<W>& tuple(Slot s) const { return (*pool_)[s]; }
  Dist coord(Slot s) const { return tuple(s).coords[axis_]; }

  bool key_less(Slot a, Slot b) const {
    const Dist ca = coord(a), cb = coord(b);
    if (ca != cb) return ca < cb;
    return tuple(a).id < tuple(b).id;
  }

  bool secondary_key_less(Slot a, Slot b) const {
    const Dist ca = tuple(a).coords[axis_ + 1], cb = tuple(b).coords[axis_ + 1];
    if (ca != cb) return ca < cb;
    return tuple(a).id < tuple(b).id;
  }

  bool better(Slot a, Slot b) const {
    return ranks_before(tuple(a).id, tuple(a).weight, tuple(b).id, tuple(b).weight);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::logic_error("level tree (axis " + std::to_string(axis_) + "): " + what);
  }

  NodeIndex new_node() {
    ++op_counters().update_work;
    if (!free_nodes_.empty()) {
      const NodeIndex n = free_nodes_.back();
      free_nodes_.pop_back();
      nodes_[n] = Node{};
      return n;
    }
    nodes_.emplace_back();
    return static_cast<NodeIndex>(nodes_.size() - 1);
  }

  void free_node(NodeIndex n) {
    nodes_[n].secondary.reset();
    nodes_[n].free = true;
    free_nodes_.push_back(n);
  }

  NodeIndex make_leaf(Slot s, bool place) {
    const NodeIndex n = new_node();
    Node& node = nodes_[n];
    node.lo = node.hi = s;
    node.heap = place ? s : kNoSlot;
    if constexpr (kSum) node.sum = tuple(s).weight;
    return n;
  }

  std::unique_ptr<LevelTree> make_secondary(std::span<const Slot> sorted_next) const {
    auto tree = std::make_unique<LevelTree>(pool_, axis_ + 1, dims_);
    tree->assign_sorted(sorted_next);
    return tree;
  }

  NodeIndex child_toward(NodeIndex n, Slot s) const {
    const Node& node = nodes_[n];
    return key_less(nodes_[node.left].hi, s) ? node.right : node.left;
  }

  NodeIndex sibling(NodeIndex parent, NodeIndex child) const {
    return nodes_[parent].left == child ? nodes_[parent].right : nodes_[parent].left;
  }

  void attach(NodeIndex parent, NodeIndex old_child, NodeIndex new_child) {
    if (parent == kNil) {
      root_ = new_child;
    } else if (nodes_[parent].left == old_child) {
      nodes_[parent].left = new_child;
    } else {
      nodes_[parent].right = new_child;
    }
  }

  // Recomputes size, key bounds and total from the children.
  void pull(NodeIndex n) {
    Node& node = nodes_[n];
    const Node& l = nodes_[node.left];
    const Node& r = nodes_[node.right];
    node.size = l.size + r.size;
    node.lo = l.lo;
    node.hi = r.hi;
    if constexpr (kSum) node.sum = S::plus(*l.sum, *r.sum);
  }

  // Pushes `carried` down from `n` towards its leaf, swapping with lighter
  // stored points; stops at the first empty slot.
  void sift(NodeIndex n, Slot carried)
    requires kHeap
  {
    while (true) {
      ++op_counters().update_work;
      Node& node = nodes_[n];
      if (node.heap == kNoSlot) {
        node.heap = carried;
        return;
      }
      if (better(carried, node.heap)) std::swap(carried, node.heap);
      if (node.leaf()) fail("sift reached an occupied leaf");
      n = child_toward(n, carried);
    }
  }

  // Empties the slot at n by pulling the better child point up, recursively.
  void fill_hole(NodeIndex n)
    requires kHeap
  {
    while (true) {
      ++op_counters().update_work;
      Node& node = nodes_[n];
      if (node.leaf()) {
        node.heap = kNoSlot;
        return;
      }
      const Slot a = nodes_[node.left].heap;
      const Slot b = nodes_[node.right].heap;
      if (a == kNoSlot && b == kNoSlot) {
        node.heap = kNoSlot;
        return;
      }
      const bool take_left = b == kNoSlot || (a != kNoSlot && better(a, b));
      const NodeIndex from = take_left ? node.left : node.right;
      node.heap = nodes_[from].heap;
      n = from;
    }
  }

  void heap_remove(Slot s)
    requires kHeap
  {
    NodeIndex n = root_;
    while (nodes_[n].heap != s) {
      if (nodes_[n].leaf()) fail("point missing from heap");
      n = child_toward(n, s);
    }
    fill_hole(n);
  }

  // Rebuilds the subtree at n perfectly balanced, adding `extra` or dropping
  // `removed`. Only points whose heap slot was inside the subtree are placed
  // in it; points sifted above it stay where they are.
  NodeIndex rebuild(NodeIndex n, Slot extra, Slot removed) {
    std::vector<Slot> leaves;
    leaves.reserve(nodes_[n].size + 1);
    collect_leaves(n, leaves);
    std::vector<Slot> placed;
    if constexpr (kHeap) collect_heap(n, placed);
    release_subtree(n);
    if (extra != kNoSlot) {
      auto at = std::lower_bound(leaves.begin(), leaves.end(), extra,
                                 [this](Slot a, Slot b) { return key_less(a, b); });
      leaves.insert(at, extra);
    }
    if (removed != kNoSlot) std::erase(leaves, removed);
    std::sort(placed.begin(), placed.end());
    const std::size_t before = nodes_.size() - free_nodes_.size();
    const NodeIndex root = build(leaves, kHeap ? &placed : nullptr).node;
    op_counters().rebuilt_nodes += nodes_.size() - free_nodes_.size() - before;
    return root;
  }

  // `placed` == nullptr places every point.
  Built build(std::span<const Slot> leaves, const std::vector<Slot>* placed) {
    if (leaves.size() == 1) {
      const Slot s = leaves[0];
      const bool place = placed == nullptr || std::binary_search(placed->begin(), placed->end(), s);
      Built out{make_leaf(s, place), {}};
      if (has_secondary()) out.by_next.push_back(s);
      return out;
    }
    const std::size_t mid = leaves.size() / 2;
    Built l = build(leaves.first(mid), placed);
    Built r = build(leaves.subspan(mid), placed);
    const NodeIndex n = new_node();
    nodes_[n].left = l.node;
    nodes_[n].right = r.node;
    pull(n);
    Built out{n, {}};
    if (has_secondary()) {
      out.by_next.resize(l.by_next.size() + r.by_next.size());
      std::merge(l.by_next.begin(), l.by_next.end(), r.by_next.begin(), r.by_next.end(),
                 out.by_next.begin(),
                 [this](Slot a, Slot b) { return secondary_key_less(a, b); });
      nodes_[n].secondary = make_secondary(out.by_next);
    }
    if constexpr (kHeap) {
      const Slot a = nodes_[l.node].heap;
      const Slot b = nodes_[r.node].heap;
      if (a != kNoSlot || b != kNoSlot) {
        const bool take_left = b == kNoSlot || (a != kNoSlot && better(a, b));
        const NodeIndex from = take_left ? l.node : r.node;
        nodes_[n].heap = nodes_[from].heap;
        fill_hole(from);
      }
    }
    return out;
  }

  void collect_leaves(NodeIndex n, std::vector<Slot>& out) const {
    std::vector<NodeIndex> stack{n};
    while (!stack.empty()) {
      const NodeIndex x = stack.back();
      stack.pop_back();
      if (nodes_[x].leaf()) {
        out.push_back(nodes_[x].lo);
      } else {
        stack.push_back(nodes_[x].right);
        stack.push_back(nodes_[x].left);
      }
    }
  }

  void collect_heap(NodeIndex n, std::vector<Slot>& out) const {
    std::vector<NodeIndex> stack{n};
    while (!stack.empty()) {
      const NodeIndex x = stack.back();
      stack.pop_back();
      if (nodes_[x].heap != kNoSlot) out.push_back(nodes_[x].heap);
      if (!nodes_[x].leaf()) {
        stack.push_back(nodes_[x].right);
        stack.push_back(nodes_[x].left);
      }
    }
  }

  void release_subtree(NodeIndex n) {
    std::vector<NodeIndex> stack{n};
    while (!stack.empty()) {
      const NodeIndex x = stack.back();
      stack.pop_back();
      if (!nodes_[x].leaf()) {
        stack.push_back(nodes_[x].left);
        stack.push_back(nodes_[x].right);
      }
      free_node(x);
    }
  }

  // Whether the point lies in `box` on every axis after this one.
  bool inside_rest(Slot s, std::span<const Interval> box) const {
    const auto& c = tuple(s).coords;
    for (unsigned j = axis_ + 1; j < dims_; ++j) {
      if (c[j] < box[j].lo || c[j] > box[j].hi) return false;
    }
    return true;
  }

  // Whether some axis after this one meets its corner coordinate.
  bool meets_rest(Slot s, std::span<const Dist> corner) const {
    const auto& c = tuple(s).coords;
    for (unsigned j = axis_ + 1; j < dims_; ++j) {
      if (c[j] >= corner[j]) return true;
    }
    return false;
  }

  void range_sum_rec(NodeIndex n, Dist lo, Dist hi, std::optional<W>& acc) const {
    ++op_counters().node_visits;
    const Node& node = nodes_[n];
    const Dist nlo = coord(node.lo), nhi = coord(node.hi);
    if (nhi < lo || nlo > hi) return;
    if (lo <= nlo && nhi <= hi) {
      accumulate_into<S>(acc, node.sum);
      return;
    }
    range_sum_rec(node.left, lo, hi, acc);
    range_sum_rec(node.right, lo, hi, acc);
  }

  void box_sum_rec(NodeIndex n, std::span<const Interval> box, std::optional<W>& acc) const {
    ++op_counters().node_visits;
    const Node& node = nodes_[n];
    const Interval range = box[axis_];
    const Dist nlo = coord(node.lo), nhi = coord(node.hi);
    if (nhi < range.lo || nlo > range.hi) return;
    if (range.lo <= nlo && nhi <= range.hi) {
      if (last()) {
        accumulate_into<S>(acc, node.sum);
      } else if (node.leaf()) {
        if (inside_rest(node.lo, box)) accumulate_into<S>(acc, node.sum);
      } else {
        node.secondary->box_sum_rec(node.secondary->root_, box, acc);
      }
      return;
    }
    box_sum_rec(node.left, box, acc);
    box_sum_rec(node.right, box, acc);
  }

  void complement_sum_rec(NodeIndex n, std::span<const Dist> corner, std::optional<W>& acc) const {
    ++op_counters().node_visits;
    const Node& node = nodes_[n];
    const Dist q = corner[axis_];
    if (coord(node.lo) >= q) {
      accumulate_into<S>(acc, node.sum);
      return;
    }
    if (coord(node.hi) < q) {
      if (last()) return;
      if (node.leaf()) {
        if (meets_rest(node.lo, corner)) accumulate_into<S>(acc, node.sum);
      } else {
        node.secondary->complement_sum_rec(node.secondary->root_, corner, acc);
      }
      return;
    }
    complement_sum_rec(node.left, corner, acc);
    complement_sum_rec(node.right, corner, acc);
  }

  void complement_report_rec(NodeIndex n, std::span<const Dist> corner,
                             std::vector<Slot>& out) const {
    ++op_counters().node_visits;
    const Node& node = nodes_[n];
    const Dist q = corner[axis_];
    if (coord(node.lo) >= q) {
      collect_leaves(n, out);
      return;
    }
    if (coord(node.hi) < q) {
      if (last()) return;
      if (node.leaf()) {
        if (meets_rest(node.lo, corner)) out.push_back(node.lo);
      } else {
        node.secondary->complement_report_rec(node.secondary->root_, corner, out);
      }
      return;
    }
    complement_report_rec(node.left, corner, out);
    complement_report_rec(node.right, corner, out);
  }

  // Candidate heap ordered so that the best candidate sits at front().
  auto candidate_order() const {
    return [this](const Candidate& a, const Candidate& b) { return better(b.slot, a.slot); };
  }

  void push_candidate(std::vector<Candidate>& heap, Candidate c) const {
    heap.push_back(c);
    std::push_heap(heap.begin(), heap.end(), candidate_order());
    auto& counters = op_counters();
    counters.max_candidate_heap = std::max<std::uint64_t>(counters.max_candidate_heap, heap.size());
  }

  // Seeds: points on the two boundary paths that fall in range, and the
  // stored point at the root of every subtree lying fully inside the range.
  void range_seed(NodeIndex n, Dist lo, Dist hi, std::vector<Candidate>& heap) const {
    ++op_counters().node_visits;
    const Node& node = nodes_[n];
    const Dist nlo = coord(node.lo), nhi = coord(node.hi);
    if (nhi < lo || nlo > hi) return;
    if (lo <= nlo && nhi <= hi) {
      if (node.heap != kNoSlot) push_candidate(heap, {node.heap, n});
      return;
    }
    if (node.heap != kNoSlot) {
      const Dist c = coord(node.heap);
      if (lo <= c && c <= hi) push_candidate(heap, {node.heap, kNil});
    }
    range_seed(node.left, lo, hi, heap);
    range_seed(node.right, lo, hi, heap);
  }

  // Extracts up to k points; every extraction from inside a subtree exposes
  // the two points stored at the children of its node.
  void drain(std::vector<Candidate>& heap, std::size_t k, std::vector<Slot>& out) const {
    op_counters().heap_seeds = heap.size();
    std::make_heap(heap.begin(), heap.end(), candidate_order());
    for (std::size_t taken = 0; taken < k && !heap.empty(); ++taken) {
      ++op_counters().node_visits;
      std::pop_heap(heap.begin(), heap.end(), candidate_order());
      const Candidate top = heap.back();
      heap.pop_back();
      out.push_back(top.slot);
      if (top.node == kNil || nodes_[top.node].leaf()) continue;
      for (NodeIndex child : {nodes_[top.node].left, nodes_[top.node].right}) {
        if (nodes_[child].heap != kNoSlot) push_candidate(heap, {nodes_[child].heap, child});
      }
    }
  }

  void box_top_k_rec(NodeIndex n, std::span<const Interval> box, std::size_t k,
                     std::vector<Slot>& out) const {
    ++op_counters().node_visits;
    const Node& node = nodes_[n];
    const Interval range = box[axis_];
    const Dist nlo = coord(node.lo), nhi = coord(node.hi);
    if (nhi < range.lo || nlo > range.hi) return;
    if (range.lo <= nlo && nhi <= range.hi) {
      if (node.leaf()) {
        if (inside_rest(node.lo, box)) out.push_back(node.lo);
      } else {
        auto found = node.secondary->box_top_k(box, k);
        out.insert(out.end(), found.begin(), found.end());
      }
      return;
    }
    box_top_k_rec(node.left, box, k, out);
    box_top_k_rec(node.right, box, k, out);
  }

  void complement_seed(NodeIndex n, std::span<const Dist> corner, std::size_t k,
                       std::vector<Candidate>& heap, std::vector<Slot>& out) const {
    ++op_counters().node_visits;
    const Node& node = nodes_[n];
    const Dist q = corner[axis_];
    if (coord(node.lo) >= q) {
      if (node.heap != kNoSlot) push_candidate(heap, {node.heap, n});
      return;
    }
    if (coord(node.hi) < q) {
      if (last()) return;
      if (node.leaf()) {
        if (meets_rest(node.lo, corner)) out.push_back(node.lo);
      } else {
        auto found = node.secondary->complement_top_k(corner, k);
        out.insert(out.end(), found.begin(), found.end());
      }
      return;
    }
    if (node.heap != kNoSlot && coord(node.heap) >= q) push_candidate(heap, {node.heap, kNil});
    complement_seed(node.left, corner, k, heap, out);
    complement_seed(node.right, corner, k, heap, out);
  }

  // Keeps the k best candidates, best first. Small lists are sorted outright.
  void select_top(std::vector<Slot>& candidates, std::size_t k) const {
    auto order = [this](Slot a, Slot b) { return better(a, b); };
    if (candidates.size() > 1024 && candidates.size() > k) {
      std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                       candidates.end(), order);
      candidates.resize(k);
    }
    std::sort(candidates.begin(), candidates.end(), order);
    if (candidates.size() > k) candidates.resize(k);
  }

  void check_node(NodeIndex n) const {
    const Node& node = nodes_[n];
    if (node.free) fail("reachable node is on the free list");
    if (node.leaf()) {
      if (node.size != 1 || node.lo != node.hi) fail("bad leaf");
      if (node.secondary) fail("leaf owns a secondary tree");
      if constexpr (kSum) {
        if (!node.sum || !(*node.sum == tuple(node.lo).weight)) fail("leaf total mismatch");
      }
      if constexpr (kHeap) {
        if (node.heap != kNoSlot && node.heap != node.lo) fail("leaf stores a foreign point");
      }
      return;
    }
    const Node& l = nodes_[node.left];
    const Node& r = nodes_[node.right];
    check_node(node.left);
    check_node(node.right);
    if (node.size != l.size + r.size) fail("size mismatch");
    if (node.lo != l.lo || node.hi != r.hi) fail("key bounds mismatch");
    if (!weight_balanced(l.size, r.size)) fail("node out of balance");
    if constexpr (kSum) {
      if (!node.sum || !(*node.sum == S::plus(*l.sum, *r.sum))) fail("subtree total mismatch");
    }
    if constexpr (kHeap) {
      if (node.heap == kNoSlot) {
        if (l.heap != kNoSlot || r.heap != kNoSlot) fail("empty heap slot above a filled one");
      } else {
        if (key_less(node.heap, node.lo) || key_less(node.hi, node.heap)) {
          fail("heap point stored outside the ancestors of its leaf");
        }
        for (Slot c : {l.heap, r.heap}) {
          if (c != kNoSlot && better(c, node.heap)) fail("heap order violated");
        }
      }
    }
    if (has_secondary()) {
      if (!node.secondary) fail("internal node lacks its secondary tree");
      std::vector<Slot> mine, theirs;
      collect_leaves(n, mine);
      node.secondary->for_each_point(theirs);
      std::sort(mine.begin(), mine.end());
      std::sort(theirs.begin(), theirs.end());
      if (mine != theirs) fail("secondary tree holds a different point set");
      node.secondary->check_invariants();
    }
  }

  const Pool* pool_;
  unsigned axis_;
  unsigned dims_;
  NodeIndex root_ = kNil;
  std::vector<Node> nodes_;
  std::vector<NodeIndex> free_nodes_;
};

}  // namespace sole::detail
