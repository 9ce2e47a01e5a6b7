#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sole {

// Distances, radii and query thresholds. Signed because radii and query
// keys go negative once they are shifted by a distance. Integer so that the
// closed comparison dist(u,v) <= d + d' is exact.
//
// Fractional lengths can be used with a fixed-point convention: scale every
// length, radius and query radius by the same power of ten before loading.
using Dist = std::int64_t;

inline constexpr Dist kMinDist = std::numeric_limits<Dist>::min();
inline constexpr Dist kMaxDist = std::numeric_limits<Dist>::max();

using Vertex = std::uint32_t;

// Input limits that keep every shifted radius and query key inside Dist.
inline constexpr Dist kMaxEdgeLength = 1'000'000'000'000;   // 1e12
inline constexpr Dist kMaxRadius = 1'000'000'000'000'000;   // 1e15
inline constexpr std::size_t kMaxVertices = 1'000'000;

// Upper bound on bag size / store dimension.
inline constexpr std::size_t kMaxDimensions = 8;

// Opaque facility token. Smaller ids win ties between equal weights.
struct FacilityId {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(const FacilityId&, const FacilityId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, FacilityId f) {
  return os << 'f' << f.value;
}

// Malformed or inconsistent input: bad files, unknown vertices, invalid
// decompositions. Misuse of a live structure (duplicate ids, removing an
// absent facility) raises std::logic_error instead.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sole

template <>
struct std::hash<sole::FacilityId> {
  std::size_t operator()(sole::FacilityId f) const noexcept {
    return std::hash<std::uint64_t>{}(f.value);
  }
};
