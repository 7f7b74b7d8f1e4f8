#pragma once

#include <cstdint>

namespace itopo {

/// Work counters shared by all engines. All fields only ever grow.
///
/// In the sparse engines `total_move_distance` equals `vertex_moves`, since
/// an order-list position has no numeric index; the dense engines add
/// |new position - old position| per moved vertex.
struct Metrics {
  std::uint64_t arc_traversals = 0;
  std::uint64_t search_steps = 0;
  std::uint64_t loop_iterations = 0;
  std::uint64_t vertex_moves = 0;
  std::uint64_t total_move_distance = 0;
  std::uint64_t pivot_selections = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

}  // namespace itopo
