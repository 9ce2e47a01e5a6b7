#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sole/core.hpp"
#include "sole/semigroup.hpp"

namespace sole {

// The four SOLE operations. A facility (f, w, d') placed on u affects a
// query (v, d) iff dist(u, v) <= d + d'.
template <OrderedSemigroup S>
class SoleEngine {
 public:
  using W = typename S::value_type;

  virtual ~SoleEngine() = default;

  // Throws InputError for an unknown vertex or a radius outside
  // [0, kMaxRadius], std::logic_error if f is already placed.
  virtual void add(Vertex v, FacilityId f, W w, Dist d) = 0;
  // Throws std::logic_error unless f is placed on v.
  virtual void remove(Vertex v, FacilityId f) = 0;
  virtual std::optional<W> sum(Vertex v, Dist d = 0) const = 0;
  // Heaviest first; ties go to the smaller id.
  virtual std::vector<Ranked<W>> top(Vertex v, std::size_t k, Dist d = 0) const = 0;
  virtual std::size_t facility_count() const = 0;
};

inline void check_radius(Dist d) {
  if (d < 0 || d > kMaxRadius) throw InputError("radius " + std::to_string(d) + " out of range");
}

template <class W>
void keep_top(std::vector<Ranked<W>>& candidates, std::size_t k) {
  auto order = [](const Ranked<W>& a, const Ranked<W>& b) { return ranks_before(a, b); };
  if (candidates.size() > 1024 && candidates.size() > k) {
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                     candidates.end(), order);
    candidates.resize(k);
  }
  std::sort(candidates.begin(), candidates.end(), order);
  if (candidates.size() > k) candidates.resize(k);
}

}  // namespace sole
