#pragma once

// One-dimensional stores keyed by facility id: a priority search tree
// (range top-k), a range-sum tree, and the combination of both.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sole/detail/level_tree.hpp"
#include "sole/semigroup.hpp"

namespace sole {

template <Semigroup S, bool kHeap, bool kSum>
class Tree1D {
 public:
  using W = typename S::value_type;

  Tree1D()
      : pool_(std::make_unique<detail::TuplePool<W>>()),
        tree_(std::make_unique<Tree>(pool_.get(), 0, 1)) {}

  // Throws std::logic_error if `id` is already present.
  void insert(FacilityId id, Dist x, W weight) {
    if (index_.contains(id)) throw std::logic_error("facility already in store");
    detail::Tuple<W> t;
    t.coords[0] = x;
    t.id = id;
    t.weight = std::move(weight);
    const detail::Slot s = pool_->add(std::move(t));
    index_.emplace(id, s);
    tree_->insert(s);
  }

  // Throws std::logic_error if `id` is absent.
  void erase(FacilityId id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::logic_error("facility not in store");
    tree_->erase(it->second);
    pool_->release(it->second);
    index_.erase(it);
  }

  bool contains(FacilityId id) const { return index_.contains(id); }
  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  int height() const { return tree_->height(); }
  std::size_t node_count() const { return tree_->node_count(); }

  std::optional<Dist> key_of(FacilityId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return (*pool_)[it->second].coords[0];
  }

  std::optional<W> range_sum(Dist lo, Dist hi) const
    requires kSum
  {
    std::optional<W> acc;
    if (lo <= hi) tree_->range_sum_into(lo, hi, acc);
    return acc;
  }

  std::optional<W> suffix_sum(Dist q) const
    requires kSum
  {
    return range_sum(q, kMaxDist);
  }

  std::vector<Ranked<W>> top_k(Dist lo, Dist hi, std::size_t k) const
    requires kHeap
  {
    if (lo > hi) return {};
    return ranked(tree_->range_top_k(lo, hi, k));
  }

  std::vector<Ranked<W>> suffix_top_k(Dist q, std::size_t k) const
    requires kHeap
  {
    return top_k(q, kMaxDist, k);
  }

  // Ids with key >= q, in key order.
  std::vector<FacilityId> suffix_report(Dist q) const {
    std::vector<detail::Slot> slots;
    const Dist corner[1] = {q};
    tree_->complement_report(corner, slots);
    std::vector<FacilityId> out;
    out.reserve(slots.size());
    for (detail::Slot s : slots) out.push_back((*pool_)[s].id);
    return out;
  }

  std::optional<Ranked<W>> root_point() const
    requires kHeap
  {
    auto s = tree_->root_heap_point();
    if (!s) return std::nullopt;
    return Ranked<W>{(*pool_)[*s].id, (*pool_)[*s].weight};
  }

  void check_invariants() const {
    tree_->check_invariants();
    if (tree_->size() != index_.size()) throw std::logic_error("index and tree sizes differ");
    std::vector<detail::Slot> slots;
    tree_->for_each_point(slots);
    for (detail::Slot s : slots) {
      auto it = index_.find((*pool_)[s].id);
      if (it == index_.end() || it->second != s) {
        throw std::logic_error("index entry does not point at its tuple");
      }
    }
  }

 private:
  using Tree = detail::LevelTree<S, kHeap, kSum>;

  std::vector<Ranked<W>> ranked(const std::vector<detail::Slot>& slots) const {
    std::vector<Ranked<W>> out;
    out.reserve(slots.size());
    for (detail::Slot s : slots) out.push_back({(*pool_)[s].id, (*pool_)[s].weight});
    return out;
  }

  std::unique_ptr<detail::TuplePool<W>> pool_;
  std::unique_ptr<Tree> tree_;
  std::map<FacilityId, detail::Slot> index_;
};

// Priority search tree: weights act as priorities.
template <class W>
using Pst = Tree1D<Max<W>, true, false>;

template <Semigroup S>
using RangeSumTree = Tree1D<S, false, true>;

template <OrderedSemigroup S>
using RangeSumPst = Tree1D<S, true, true>;

}  // namespace sole
