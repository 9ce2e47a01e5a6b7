#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "sole/core.hpp"

namespace sole {

// A weight type with an associative plus. No identity and no inverse are
// assumed, so every sum-returning query answers std::optional: nullopt is
// the "nothing matched" marker.
template <class S>
concept Semigroup = requires(const typename S::value_type& a,
                             const typename S::value_type& b) {
  typename S::value_type;
  { S::plus(a, b) } -> std::convertible_to<typename S::value_type>;
};

// Top-k needs a total order on weights.
template <class S>
concept OrderedSemigroup =
    Semigroup<S> && std::totally_ordered<typename S::value_type>;

template <class T>
struct Sum {
  using value_type = T;
  static T plus(const T& a, const T& b) { return a + b; }
};

template <class T>
struct Min {
  using value_type = T;
  static T plus(const T& a, const T& b) { return std::min(a, b); }
};

template <class T>
struct Max {
  using value_type = T;
  static T plus(const T& a, const T& b) { return std::max(a, b); }
};

// Non-commutative; used to check that folds happen in key order.
struct Concat {
  using value_type = std::string;
  static std::string plus(const std::string& a, const std::string& b) { return a + b; }
};

using IntSum = Sum<std::int64_t>;
using IntMin = Min<std::int64_t>;
using IntMax = Max<std::int64_t>;

// acc := acc + x, treating an empty accumulator as "no value yet".
template <Semigroup S>
void accumulate_into(std::optional<typename S::value_type>& acc,
                     const std::optional<typename S::value_type>& x) {
  if (!x) return;
  if (acc) {
    acc = S::plus(*acc, *x);
  } else {
    acc = x;
  }
}

// A reported facility. Ordering for top-k: heavier first, then smaller id.
template <class W>
struct Ranked {
  FacilityId id;
  W weight;

  friend bool operator==(const Ranked&, const Ranked&) = default;
};

template <class W>
bool ranks_before(const FacilityId& a_id, const W& a_w, const FacilityId& b_id,
                  const W& b_w) {
  if (b_w < a_w) return true;
  if (a_w < b_w) return false;
  return a_id < b_id;
}

template <class W>
bool ranks_before(const Ranked<W>& a, const Ranked<W>& b) {
  return ranks_before(a.id, a.weight, b.id, b.weight);
}

}  // namespace sole
