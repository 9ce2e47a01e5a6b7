#pragma once

// d-dimensional range-sum priority search trees with box queries and
// orthant-complement queries.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sole/detail/level_tree.hpp"
#include "sole/semigroup.hpp"

namespace sole {

using detail::Interval;

// How a complement query is answered: one recursive traversal, or the
// union of dims() disjoint box queries.
enum class Strategy { kDirect, kBoxes };

template <OrderedSemigroup S>
class MultiDimStore {
 public:
  using W = typename S::value_type;

  // dims == 0 is allowed: such a store holds facilities but no point ever
  // lies in a complement region.
  explicit MultiDimStore(unsigned dims)
      : dims_(dims), pool_(std::make_unique<detail::TuplePool<W>>()) {
    if (dims > kMaxDimensions) throw std::invalid_argument("too many dimensions");
    if (dims > 0) tree_ = std::make_unique<Tree>(pool_.get(), 0, dims);
  }

  unsigned dims() const { return dims_; }
  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  bool contains(FacilityId id) const { return index_.contains(id); }

  void insert(FacilityId id, std::span<const Dist> coords, W weight) {
    if (coords.size() != dims_) throw std::invalid_argument("coordinate count mismatch");
    if (index_.contains(id)) throw std::logic_error("facility already in store");
    detail::Tuple<W> t;
    std::copy(coords.begin(), coords.end(), t.coords.begin());
    t.id = id;
    t.weight = std::move(weight);
    const detail::Slot s = pool_->add(std::move(t));
    index_.emplace(id, s);
    if (tree_) tree_->insert(s);
  }

  void erase(FacilityId id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::logic_error("facility not in store");
    if (tree_) tree_->erase(it->second);
    pool_->release(it->second);
    index_.erase(it);
  }

  std::vector<Dist> coords(FacilityId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::logic_error("facility not in store");
    const auto& c = (*pool_)[it->second].coords;
    return {c.begin(), c.begin() + dims_};
  }

  std::optional<W> box_sum(std::span<const Interval> box) const {
    check_box(box);
    std::optional<W> acc;
    if (tree_ && !empty_box(box)) tree_->box_sum_into(box, acc);
    return acc;
  }

  std::vector<Ranked<W>> box_top_k(std::span<const Interval> box, std::size_t k) const {
    check_box(box);
    if (!tree_ || empty_box(box)) return {};
    return ranked(tree_->box_top_k(box, k));
  }

  // Points p with p_j >= corner_j for some j.
  std::optional<W> complement_sum(std::span<const Dist> corner,
                                  Strategy strategy = Strategy::kDirect) const {
    check_corner(corner);
    std::optional<W> acc;
    if (!tree_) return acc;
    if (strategy == Strategy::kDirect) {
      tree_->complement_sum_into(corner, acc);
    } else {
      for (const auto& box : complement_boxes(corner)) tree_->box_sum_into(box, acc);
    }
    return acc;
  }

  std::vector<Ranked<W>> complement_top_k(std::span<const Dist> corner, std::size_t k,
                                          Strategy strategy = Strategy::kDirect) const {
    check_corner(corner);
    if (!tree_ || k == 0) return {};
    if (strategy == Strategy::kDirect) return ranked(tree_->complement_top_k(corner, k));
    std::vector<Ranked<W>> merged;
    for (const auto& box : complement_boxes(corner)) {
      auto part = ranked(tree_->box_top_k(box, k));
      merged.insert(merged.end(), part.begin(), part.end());
    }
    auto order = [](const Ranked<W>& a, const Ranked<W>& b) { return ranks_before(a, b); };
    std::sort(merged.begin(), merged.end(), order);
    if (merged.size() > k) merged.resize(k);
    return merged;
  }

  // Every matching facility, ascending by id.
  std::vector<FacilityId> complement_report(std::span<const Dist> corner) const {
    check_corner(corner);
    std::vector<FacilityId> out;
    if (!tree_) return out;
    std::vector<detail::Slot> slots;
    tree_->complement_report(corner, slots);
    for (detail::Slot s : slots) out.push_back((*pool_)[s].id);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Box i covers (-inf, q_j - 1] on axes j < i, [q_i, inf) on axis i, and
  // everything on axes after i. Boxes that are empty (q_j at the minimum)
  // are dropped.
  static std::vector<std::vector<Interval>> complement_boxes(std::span<const Dist> corner) {
    std::vector<std::vector<Interval>> boxes;
    for (std::size_t i = 0; i < corner.size(); ++i) {
      std::vector<Interval> box(corner.size());
      bool empty = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (corner[j] == kMinDist) empty = true;
        box[j] = {kMinDist, corner[j] == kMinDist ? kMinDist : corner[j] - 1};
      }
      box[i] = {corner[i], kMaxDist};
      if (!empty) boxes.push_back(std::move(box));
    }
    return boxes;
  }

  std::size_t node_count() const { return tree_ ? tree_->node_count() : 0; }
  int height() const { return tree_ ? tree_->height() : -1; }

  void check_invariants() const {
    if (!tree_) return;
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
  using Tree = detail::LevelTree<S, true, true>;

  void check_box(std::span<const Interval> box) const {
    if (box.size() != dims_) throw std::invalid_argument("box dimension mismatch");
  }
  void check_corner(std::span<const Dist> corner) const {
    if (corner.size() != dims_) throw std::invalid_argument("corner dimension mismatch");
  }
  static bool empty_box(std::span<const Interval> box) {
    return std::any_of(box.begin(), box.end(), [](const Interval& r) { return r.lo > r.hi; });
  }

  std::vector<Ranked<W>> ranked(const std::vector<detail::Slot>& slots) const {
    std::vector<Ranked<W>> out;
    out.reserve(slots.size());
    for (detail::Slot s : slots) out.push_back({(*pool_)[s].id, (*pool_)[s].weight});
    return out;
  }

  unsigned dims_;
  std::unique_ptr<detail::TuplePool<W>> pool_;
  std::unique_ptr<Tree> tree_;
  std::map<FacilityId, detail::Slot> index_;
};

}  // namespace sole
