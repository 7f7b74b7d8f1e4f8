#pragma once

// Topological search for dense graphs.
//
// The order is an explicit numbering 1..n. A new arc (v, w) with v numbered
// after w scans the positions between them from both ends at once, building
// a forward queue F and a backward queue B until the scans meet at position
// k. A cycle exists iff some arc runs from F to B. Otherwise F is dropped into
// the free slots at k and above and B into the free slots below k, pushing
// further vertices out of the way as needed.

#include <optional>
#include <vector>

#include "itopo/common.hpp"
#include "itopo/engine_types.hpp"
#include "itopo/graph_store.hpp"
#include "itopo/metrics.hpp"

namespace itopo {

/// position(v) in [1, size()] and its inverse, with room for empty slots.
class Numbering {
 public:
  Numbering() = default;

  explicit Numbering(std::size_t n) : vertex_(n + 1, kNoVertex), position_(n, 0) {
    for (VertexId v = 0; v < n; ++v) place(v, v + 1);
  }

  std::size_t size() const noexcept { return vertex_.size() - 1; }
  std::uint32_t position(VertexId v) const { return position_[v]; }
  VertexId vertex(std::uint32_t i) const { return vertex_[i]; }
  bool empty_slot(std::uint32_t i) const { return vertex_[i] == kNoVertex; }

  void place(VertexId v, std::uint32_t i) {
    vertex_[i] = v;
    position_[v] = i;
  }
  void clear_slot(std::uint32_t i) { vertex_[i] = kNoVertex; }

  /// Appends a vertex id slot and a position at the end.
  void append(VertexId v) {
    if (v >= position_.size()) position_.resize(v + 1, 0);
    vertex_.push_back(v);
    position_[v] = static_cast<std::uint32_t>(size());
  }

  /// Drops empty slots and renumbers the survivors 1..c in order.
  void compact() {
    std::uint32_t out = 1;
    for (std::uint32_t i = 1; i < vertex_.size(); ++i)
      if (vertex_[i] != kNoVertex) place(vertex_[i], out++);
    vertex_.resize(out);
  }

  /// Vertices by increasing position; empty slots skipped.
  std::vector<VertexId> order() const {
    std::vector<VertexId> out;
    out.reserve(size());
    for (std::uint32_t i = 1; i < vertex_.size(); ++i)
      if (vertex_[i] != kNoVertex) out.push_back(vertex_[i]);
    return out;
  }

 private:
  std::vector<VertexId> vertex_{kNoVertex};
  std::vector<std::uint32_t> position_;
};

/// A FIFO queue whose live part is [head, end) of a vector.
struct VertexQueue {
  std::vector<VertexId> items;
  std::size_t head = 0;

  bool empty() const noexcept { return head == items.size(); }
  std::size_t size() const noexcept { return items.size() - head; }
  void inject(VertexId x) { items.push_back(x); }
  VertexId pop() { return items[head++]; }
};

struct SearchFrontier {
  VertexQueue forward;   ///< F
  VertexQueue backward;  ///< B
  std::uint32_t k = 0;   ///< meeting position, i = j = k
};

struct DenseMove {
  VertexId vertex;
  std::uint32_t from;
  std::uint32_t to;
  bool operator==(const DenseMove&) const = default;
};

/// Scans from position(w) up and position(v) down, alternating, until the
/// scans meet. `arc(x, y)` tests the adjacency matrix; every call is counted.
template <class ArcTest>
SearchFrontier topological_search(Numbering& num, VertexId v, VertexId w, ArcTest&& arc, Metrics& metrics) {
  SearchFrontier fr;
  auto& F = fr.forward;
  auto& B = fr.backward;
  F.inject(w);
  B.inject(v);
  std::uint32_t i = num.position(w), j = num.position(v);
  num.clear_slot(i);
  num.clear_slot(j);
  auto from_forward = [&](VertexId y) {
    for (VertexId u : F.items) {
      ++metrics.arc_traversals;
      if (arc(u, y)) return true;
    }
    return false;
  };
  auto into_backward = [&](VertexId x) {
    for (VertexId z : B.items) {
      ++metrics.arc_traversals;
      if (arc(x, z)) return true;
    }
    return false;
  };
  while (true) {
    ++metrics.loop_iterations;
    ++i;
    while (i < j && !from_forward(num.vertex(i))) ++i;
    if (i == j) break;
    F.inject(num.vertex(i));
    num.clear_slot(i);
    ++metrics.search_steps;

    --j;
    while (i < j && !into_backward(num.vertex(j))) --j;
    if (i == j) break;
    B.inject(num.vertex(j));
    num.clear_slot(j);
    ++metrics.search_steps;
  }
  fr.k = i;
  return fr;
}

/// Any arc from F to B, probing all |F|*|B| pairs in the worst case.
template <class ArcTest>
std::optional<Arc> crossing_arc(const SearchFrontier& fr, ArcTest&& arc, Metrics& metrics) {
  for (VertexId u : fr.forward.items)
    for (VertexId z : fr.backward.items) {
      ++metrics.arc_traversals;
      if (arc(u, z)) return Arc{u, z};
    }
  return std::nullopt;
}

namespace detail {

inline void drop(Numbering& num, VertexId x, std::uint32_t i, std::vector<DenseMove>& moves) {
  if (num.position(x) != i) moves.push_back({x, num.position(x), i});
  num.place(x, i);
}

template <class ArcTest>
void reorder_forward(Numbering& num, VertexQueue& F, std::uint32_t i, ArcTest& arc, Metrics& metrics,
                     std::vector<DenseMove>& moves) {
  while (!F.empty()) {
    if (i > num.size()) throw InternalError("forward reorder ran past the last position");
    if (!num.empty_slot(i)) {
      const VertexId q = num.vertex(i);
      for (std::size_t at = F.head; at < F.items.size(); ++at) {
        ++metrics.arc_traversals;
        if (arc(F.items[at], q)) {
          F.inject(q);
          num.clear_slot(i);
          break;
        }
      }
    }
    if (num.empty_slot(i)) drop(num, F.pop(), i, moves);
    ++i;
  }
}

template <class ArcTest>
void reorder_backward(Numbering& num, VertexQueue& B, std::uint32_t j, ArcTest& arc, Metrics& metrics,
                      std::vector<DenseMove>& moves) {
  while (!B.empty()) {
    if (j <= 1) throw InternalError("backward reorder ran past the first position");
    --j;
    if (!num.empty_slot(j)) {
      const VertexId q = num.vertex(j);
      for (std::size_t at = B.head; at < B.items.size(); ++at) {
        ++metrics.arc_traversals;
        if (arc(q, B.items[at])) {
          B.inject(q);
          num.clear_slot(j);
          break;
        }
      }
    }
    if (num.empty_slot(j)) drop(num, B.pop(), j, moves);
  }
}

}  // namespace detail

/// Reinserts F at positions >= k and B below k. Returns every vertex whose
/// position changed with its old and new positions. With `check_slots` the
/// free-slot counts are verified first, at O(n) cost.
template <class ArcTest>
std::vector<DenseMove> reorder_dense(Numbering& num, SearchFrontier& fr, ArcTest&& arc, Metrics& metrics,
                                     bool backward_first = false, bool check_slots = false) {
  if (check_slots) {
    std::size_t free_high = 0, free_low = 0;
    for (std::uint32_t g = 1; g <= num.size(); ++g)
      if (num.empty_slot(g)) ++(g >= fr.k ? free_high : free_low);
    if (free_high != fr.forward.size() || free_low != fr.backward.size())
      throw InternalError("free slot counts do not match the search queues");
  }
  std::vector<DenseMove> moves;
  if (backward_first) {
    detail::reorder_backward(num, fr.backward, fr.k, arc, metrics, moves);
    detail::reorder_forward(num, fr.forward, fr.k, arc, metrics, moves);
  } else {
    detail::reorder_forward(num, fr.forward, fr.k, arc, metrics, moves);
    detail::reorder_backward(num, fr.backward, fr.k, arc, metrics, moves);
  }
  return moves;
}

struct DenseConfig {
  bool backward_first = false;  ///< run the backward reorder loop before the forward one
  bool check_slots = false;     ///< verify free-slot counts before every reorder
};

template <AdjacencyMatrix Matrix = BitMatrix>
class DenseEngine {
 public:
  explicit DenseEngine(std::size_t n, DenseConfig config = {}) : graph_(n), num_(n), config_(config) {}

  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t arc_count() const noexcept { return graph_.arc_count(); }
  const DenseGraph<Matrix>& graph() const noexcept { return graph_; }
  const Metrics& metrics() const noexcept { return metrics_; }
  EngineStatus status() const noexcept { return status_; }

  /// 1-based position of v.
  std::uint32_t position(VertexId v) const { return num_.position(v); }
  VertexId vertex_at(std::uint32_t i) const { return num_.vertex(i); }
  bool before(VertexId x, VertexId y) const { return num_.position(x) < num_.position(y); }
  std::vector<VertexId> order() const { return num_.order(); }
  const Numbering& numbering() const noexcept { return num_; }

  /// Queues and meeting point as the last search left them.
  const SearchFrontier& last_frontier() const noexcept { return frontier_; }
  const std::vector<DenseMove>& last_moves() const noexcept { return moves_; }

  InsertResult add_arc(VertexId v, VertexId w) {
    check_vertex(v, vertex_count());
    check_vertex(w, vertex_count());
    if (status_ == EngineStatus::CycleFound) throw UsageError("engine stopped at a cycle; no further arcs accepted");
    if (graph_.has_arc(v, w)) throw DuplicateArcError({v, w});
    moves_.clear();
    if (v == w) {
      graph_.insert({v, w});
      status_ = EngineStatus::CycleFound;
      return {Outcome::Cycle, {}, Arc{v, w}};
    }
    graph_.insert({v, w});
    if (before(v, w)) return {};

    auto arc = [this](VertexId x, VertexId y) { return graph_.has_arc(x, y); };
    frontier_ = topological_search(num_, v, w, arc, metrics_);
    if (auto crossing = crossing_arc(frontier_, arc, metrics_)) {
      // Put the searched vertices back where they were; the order stays valid
      // for the arcs before (v, w).
      for (const auto* q : {&frontier_.forward.items, &frontier_.backward.items})
        for (VertexId x : *q) num_.place(x, num_.position(x));
      status_ = EngineStatus::CycleFound;
      return {Outcome::Cycle, {}, crossing};
    }
    SearchFrontier work = frontier_;
    moves_ = reorder_dense(num_, work, arc, metrics_, config_.backward_first, config_.check_slots);
    InsertResult result;
    result.outcome = Outcome::Reordered;
    for (const DenseMove& mv : moves_) {
      result.moved.push_back(mv.vertex);
      metrics_.total_move_distance += mv.to > mv.from ? mv.to - mv.from : mv.from - mv.to;
    }
    metrics_.vertex_moves += moves_.size();
    return result;
  }

  /// True iff every arc goes from a lower to a higher position and no slot is empty.
  bool order_is_topological() const {
    const std::size_t n = vertex_count();
    for (std::uint32_t i = 1; i <= n; ++i)
      if (num_.empty_slot(i) || num_.position(num_.vertex(i)) != i) return false;
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = 0; y < n; ++y)
        if (graph_.has_arc(x, y) && !before(x, y)) return false;
    return true;
  }

 private:
  DenseGraph<Matrix> graph_;
  Numbering num_;
  DenseConfig config_;
  Metrics metrics_;
  EngineStatus status_ = EngineStatus::Active;
  SearchFrontier frontier_;
  std::vector<DenseMove> moves_;
};

}  // namespace itopo
