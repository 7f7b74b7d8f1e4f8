#pragma once

// Online topological ordering with cycle detection for sparse graphs.
//
// The order lives in an OrderList. A new arc (v, w) with v after w triggers
// either a one-way limited search forward from w (vertices after v are never
// visited) or a two-way soft-threshold search forward from w and backward
// from v. If no cycle is found the visited vertices are moved so that the
// order is topological again; otherwise the engine reports a witness arc on
// the cycle and stops accepting arcs.

#include <algorithm>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "itopo/common.hpp"
#include "itopo/engine_types.hpp"
#include "itopo/graph_store.hpp"
#include "itopo/metrics.hpp"
#include "itopo/order_list.hpp"
#include "itopo/soft_search.hpp"

namespace itopo {

enum class SearchMode { Limited, SoftThreshold };

struct SparseConfig {
  SearchMode mode = SearchMode::SoftThreshold;
  PivotRule pivot = PivotRule::Median;
  std::uint64_t seed = 0;
  bool check_passivity = false;  ///< verify the passive-vertex invariant every loop iteration
  bool trace = false;            ///< record a SearchTrace for the last search
};

/// What the most recent search saw. Filled only when SparseConfig::trace is set.
struct SearchTrace {
  std::vector<VertexId> forward;    ///< F in visit order
  std::vector<VertexId> backward;   ///< B in visit order (two-way only)
  std::vector<VertexId> thresholds; ///< successive values of s
  std::vector<std::pair<Arc, Arc>> steps;  ///< (forward arc, backward arc) per search step
  std::vector<Arc> traversed;       ///< arcs in traversal order (limited search)
  VertexId pivot = kNoVertex;       ///< t
  std::vector<VertexId> f_less;     ///< F_< in its new internal order
  std::vector<VertexId> b_greater;  ///< B_> in its new internal order
  std::uint64_t loop_iterations = 0;

  void clear() { *this = SearchTrace{}; }
};

class SparseEngine {
 public:
  explicit SparseEngine(std::size_t n, SparseConfig config = {})
      : graph_(n), config_(config), rng_(config.seed) {
    items_.reserve(n);
    for (VertexId v = 0; v < n; ++v) items_.push_back(order_.push_back(v));
    search_.resize(n);
    mark_.assign(n, 0);
  }

  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t arc_count() const noexcept { return graph_.arc_count(); }
  const SparseGraph& graph() const noexcept { return graph_; }
  const Metrics& metrics() const noexcept { return metrics_; }
  EngineStatus status() const noexcept { return status_; }
  const SparseConfig& config() const noexcept { return config_; }
  const SearchTrace& last_trace() const noexcept { return trace_; }
  const OrderList& order_list() const noexcept { return order_; }

  /// Loop iterations of the most recent two-way search.
  std::uint64_t last_loop_iterations() const noexcept { return last_iterations_; }

  VertexId add_vertex() {
    const VertexId v = graph_.add_vertex();
    items_.push_back(order_.push_back(v));
    search_.grow(graph_.vertex_count());
    mark_.push_back(0);
    return v;
  }

  /// True iff x precedes y in the maintained order.
  bool before(VertexId x, VertexId y) const { return order_.before(items_[x], items_[y]); }

  /// Vertices front to back.
  std::vector<VertexId> order() const { return order_.payloads(); }

  InsertResult add_arc(VertexId v, VertexId w) {
    check_vertex(v, vertex_count());
    check_vertex(w, vertex_count());
    if (status_ == EngineStatus::CycleFound) throw UsageError("engine stopped at a cycle; no further arcs accepted");
    if (v == w) {
      // A self-loop is a cycle on its own.
      if (graph_.insert({v, w}) == InsertStatus::Duplicate) throw DuplicateArcError({v, w});
      status_ = EngineStatus::CycleFound;
      return {Outcome::Cycle, {}, Arc{v, w}};
    }
    if (graph_.insert({v, w}) == InsertStatus::Duplicate) throw DuplicateArcError({v, w});
    if (config_.trace) trace_.clear();
    if (before(v, w)) return {};

    std::optional<Arc> witness;
    InsertResult result;
    if (config_.mode == SearchMode::Limited) {
      std::vector<VertexId> postorder;
      witness = limited_search(v, w, postorder);
      if (!witness) {
        reorder_after_limited(v, postorder);
        result.moved.assign(postorder.rbegin(), postorder.rend());
      }
    } else {
      witness = soft_threshold_search(v, w);
      if (!witness) {
        Partition part = compute_pivot_and_partition(v);
        result.moved = reorder_two_way(part);
      }
    }
    if (witness) {
      status_ = EngineStatus::CycleFound;
      result.outcome = Outcome::Cycle;
      result.witness = witness;
      return result;
    }
    result.outcome = Outcome::Reordered;
    metrics_.vertex_moves += result.moved.size();
    metrics_.total_move_distance += result.moved.size();
    return result;
  }

  /// One-way search forward from w through vertices before v, depth first.
  /// Returns an arc (x, v) closing a cycle, or nothing; in the latter case
  /// `postorder` holds the visited vertices in DFS postorder.
  std::optional<Arc> limited_search(VertexId v, VertexId w, std::vector<VertexId>& postorder) {
    search_.begin();
    postorder.clear();
    std::vector<std::pair<VertexId, ArcIndex>> stack;
    search_.visit_forward(w, kNoArc);
    stack.push_back({w, graph_.first_out(w)});
    while (!stack.empty()) {
      auto& [x, cursor] = stack.back();
      if (cursor == kNoArc) {
        postorder.push_back(x);
        stack.pop_back();
        continue;
      }
      const ArcIndex a = cursor;
      cursor = graph_.next_out(a);
      ++metrics_.arc_traversals;
      ++metrics_.search_steps;
      ++metrics_.loop_iterations;
      const VertexId y = graph_.arc(a).head;
      if (config_.trace) trace_.traversed.push_back(graph_.arc(a));
      if (y == v) return graph_.arc(a);
      if (!search_.in_f(y) && before(y, v)) {
        search_.visit_forward(y, kNoArc);
        stack.push_back({y, graph_.first_out(y)});
      }
    }
    if (config_.trace) trace_.forward = search_.f_members;
    return std::nullopt;
  }

  /// Moves the visited vertices, in reverse postorder, to just after v.
  void reorder_after_limited(VertexId v, std::span<const VertexId> postorder) {
    OrderItem anchor = items_[v];
    for (auto it = postorder.rbegin(); it != postorder.rend(); ++it) anchor = move_after(*it, anchor);
  }

  /// Two-way soft-threshold search. Returns a witness arc on a cycle through
  /// (v, w), or nothing; on nothing, the search state is left for
  /// compute_pivot_and_partition.
  std::optional<Arc> soft_threshold_search(VertexId v, VertexId w) {
    search_.begin();
    search_.visit_forward(w, graph_.first_out(w));
    search_.visit_backward(v, graph_.first_in(v));
    const auto start = metrics_.loop_iterations;
    SoftSearchHooks hooks;
    hooks.check_passivity = config_.check_passivity;
    if (config_.trace) hooks.thresholds = &trace_.thresholds;
    auto result = run_soft_threshold(
        search_, v, [this](VertexId x, VertexId y) { return before(x, y); },
        [this](VertexId u, VertexId z) { return search_step(u, z); },
        [this](VertexId x) { return order_.sort_key(items_[x]); }, config_.pivot, rng_, metrics_, hooks);
    last_iterations_ = metrics_.loop_iterations - start;
    if (config_.trace) {
      trace_.forward = search_.f_members;
      trace_.backward = search_.b_members;
      trace_.loop_iterations = last_iterations_;
    }
    return result;
  }

  /// Traverses the arc at out(u) forward and the arc at in(z) backward.
  std::optional<Arc> search_step(VertexId u, VertexId z) {
    const ArcIndex fa = search_.out(u);
    const ArcIndex ba = search_.in(z);
    search_.out(u) = graph_.next_out(fa);
    search_.in(z) = graph_.next_in(ba);
    metrics_.arc_traversals += 2;
    if (search_.out(u) == kNoArc) search_.forward.remove(u);
    if (search_.in(z) == kNoArc) search_.backward.remove(z);
    const VertexId x = graph_.arc(fa).head;
    const VertexId y = graph_.arc(ba).tail;
    if (config_.trace) trace_.steps.push_back({graph_.arc(fa), graph_.arc(ba)});
    if (search_.in_b(x)) return Arc{u, x};
    if (search_.in_f(y) || x == y) return Arc{y, z};
    if (!search_.in_f(x)) search_.visit_forward(x, graph_.first_out(x));
    if (!search_.in_b(y)) search_.visit_backward(y, graph_.first_in(y));
    return std::nullopt;
  }

  struct Partition {
    VertexId pivot = kNoVertex;       ///< t
    std::vector<VertexId> f_less;     ///< F_<, forward vertices before t
    std::vector<VertexId> b_greater;  ///< B_>, backward vertices after t
    VertexId v = kNoVertex;
  };

  /// t = min({v} u {x in F : out(x) != null}); F_< and B_> split around t.
  Partition compute_pivot_and_partition(VertexId v) const {
    Partition part;
    part.v = v;
    VertexId t = v;
    for (VertexId x : search_.f_members)
      if (x != t && search_.out(x) != kNoArc && before(x, t)) t = x;
    part.pivot = t;
    for (VertexId x : search_.f_members)
      if (x != t && before(x, t)) part.f_less.push_back(x);
    for (VertexId y : search_.b_members)
      if (y != t && before(t, y)) part.b_greater.push_back(y);
    return part;
  }

  /// If t = v, F_< goes just after v; otherwise B_> then F_< go just before
  /// t. Each group keeps a topological order of its induced subgraph.
  std::vector<VertexId> reorder_two_way(Partition part) {
    sort_induced(part.f_less, /*forward=*/true);
    sort_induced(part.b_greater, /*forward=*/false);
    if (config_.trace) {
      trace_.pivot = part.pivot;
      trace_.f_less = part.f_less;
      trace_.b_greater = part.b_greater;
    }
    if (part.pivot == part.v) {
      OrderItem anchor = items_[part.v];
      for (VertexId x : part.f_less) anchor = move_after(x, anchor);
    } else {
      OrderItem anchor = items_[part.pivot];
      for (auto it = part.f_less.rbegin(); it != part.f_less.rend(); ++it) anchor = move_before(*it, anchor);
      for (auto it = part.b_greater.rbegin(); it != part.b_greater.rend(); ++it) anchor = move_before(*it, anchor);
    }
    std::vector<VertexId> moved = std::move(part.b_greater);
    moved.insert(moved.end(), part.f_less.begin(), part.f_less.end());
    return moved;
  }

  /// True iff every stored arc goes forward in the current order.
  bool order_is_topological() const {
    for (std::size_t i = 0; i < graph_.arc_count(); ++i) {
      const Arc& a = graph_.arc(static_cast<ArcIndex>(i));
      if (a.tail == a.head || !before(a.tail, a.head)) return false;
    }
    return true;
  }

 private:
  OrderItem move_after(VertexId x, OrderItem anchor) {
    order_.erase(items_[x]);
    items_[x] = order_.insert_after(anchor, x);
    return items_[x];
  }

  OrderItem move_before(VertexId x, OrderItem anchor) {
    order_.erase(items_[x]);
    items_[x] = order_.insert_before(anchor, x);
    return items_[x];
  }

  // Replaces `group` by a topological order of the subgraph it induces:
  // DFS reverse postorder over outgoing arcs, or DFS postorder over incoming
  // arcs for the backward group.
  void sort_induced(std::vector<VertexId>& group, bool forward) {
    if (group.size() < 2) return;
    if (++mark_epoch_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      mark_epoch_ = 2;
    }
    const std::uint32_t member = mark_epoch_;
    const std::uint32_t done = ++mark_epoch_;
    for (VertexId x : group) mark_[x] = member;
    std::vector<VertexId> result;
    result.reserve(group.size());
    std::vector<std::pair<VertexId, ArcIndex>> stack;
    auto first = [&](VertexId x) { return forward ? graph_.first_out(x) : graph_.first_in(x); };
    auto next = [&](ArcIndex a) { return forward ? graph_.next_out(a) : graph_.next_in(a); };
    auto other = [&](ArcIndex a) { return forward ? graph_.arc(a).head : graph_.arc(a).tail; };
    for (VertexId root : group) {
      if (mark_[root] != member) continue;
      mark_[root] = done;
      stack.push_back({root, first(root)});
      while (!stack.empty()) {
        auto& [x, cursor] = stack.back();
        if (cursor == kNoArc) {
          result.push_back(x);
          stack.pop_back();
          continue;
        }
        const VertexId y = other(cursor);
        cursor = next(cursor);
        if (mark_[y] == member) {
          mark_[y] = done;
          stack.push_back({y, first(y)});
        }
      }
    }
    if (forward) std::reverse(result.begin(), result.end());
    group = std::move(result);
  }

  SparseGraph graph_;
  OrderList order_;
  std::vector<OrderItem> items_;
  SparseConfig config_;
  std::mt19937_64 rng_;
  Metrics metrics_;
  EngineStatus status_ = EngineStatus::Active;
  SoftSearchState search_;
  SearchTrace trace_;
  std::uint64_t last_iterations_ = 0;
  std::vector<std::uint32_t> mark_;
  std::uint32_t mark_epoch_ = 0;
};

}  // namespace itopo
