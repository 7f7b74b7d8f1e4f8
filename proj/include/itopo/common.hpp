#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace itopo {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

struct Arc {
  VertexId tail = kNoVertex;
  VertexId head = kNoVertex;

  friend constexpr bool operator==(const Arc&, const Arc&) = default;
  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

inline std::string to_string(const Arc& a) {
  return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

/// Raised when an operation is applied to an object in the wrong state
/// (insertion after a cycle, dead order-list handle, and the like).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an internal invariant is found broken in a release build.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_vertex(VertexId v, std::size_t n) {
  if (v >= n) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range [0, " +
                            std::to_string(n) + ")");
  }
}

constexpr std::uint64_t arc_key(VertexId tail, VertexId head) noexcept {
  return (static_cast<std::uint64_t>(tail) << 32) | head;
}

}  // namespace itopo

template <>
struct std::hash<itopo::Arc> {
  std::size_t operator()(const itopo::Arc& a) const noexcept {
    return std::hash<std::uint64_t>{}(itopo::arc_key(a.tail, a.head));
  }
};
