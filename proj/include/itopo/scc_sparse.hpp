#pragma once

// Strong components under arc insertion, sparse variant.
//
// Components are disjoint sets; each canonical vertex owns circular rings of
// the arcs leaving and entering its component. A new arc (v, w) with f(v)
// after f(w) runs the soft-threshold search over canonical vertices, deleting
// loops as it meets them and never stopping at a cycle. The components on
// paths from f(w) to f(v) then merge under f(v), and the canonical order is
// repaired as in the topological-order engine.

#include <algorithm>
#include <random>
#include <unordered_set>
#include <vector>

#include "itopo/common.hpp"
#include "itopo/disjoint_sets.hpp"
#include "itopo/engine_types.hpp"
#include "itopo/graph_store.hpp"
#include "itopo/metrics.hpp"
#include "itopo/new_component.hpp"
#include "itopo/order_list.hpp"
#include "itopo/soft_search.hpp"

namespace itopo {

struct SccSparseConfig {
  PivotRule pivot = PivotRule::Median;
  std::uint64_t seed = 0;
  bool check_passivity = false;
  bool trace = false;
};

struct SccSearchTrace {
  std::vector<VertexId> thresholds;
  std::vector<std::pair<Arc, Arc>> steps;  ///< arcs as stored, before mapping to components
  VertexId pivot = kNoVertex;
  std::vector<VertexId> f_less, b_greater;
  bool b_greater_exhausted = true;  ///< every vertex of B_> had its in-ring fully traversed

  void clear() { *this = SccSearchTrace{}; }
};

class SccSparseEngine {
 public:
  explicit SccSparseEngine(std::size_t n, SccSparseConfig config = {})
      : sets_(n), rings_(n), config_(config), rng_(config.seed), out_done_(n, 0), in_done_(n, 0) {
    items_.reserve(n);
    for (VertexId v = 0; v < n; ++v) items_.push_back(order_.push_back(v));
    search_.resize(n);
  }

  std::size_t vertex_count() const noexcept { return items_.size(); }
  std::size_t arc_count() const noexcept { return rings_.arc_count(); }
  const Metrics& metrics() const noexcept { return metrics_; }
  std::uint64_t loop_deletions() const noexcept { return loop_deletions_; }
  const SccSearchTrace& last_trace() const noexcept { return trace_; }

  VertexId find(VertexId v) { return sets_.find(v); }

  /// find(v) for every vertex.
  std::vector<VertexId> components() {
    std::vector<VertexId> label(vertex_count());
    for (VertexId v = 0; v < label.size(); ++v) label[v] = sets_.find(v);
    return label;
  }

  /// Canonical vertices in topological order of their components.
  std::vector<VertexId> canonical_order() const { return order_.payloads(); }

  bool before(VertexId x, VertexId y) const { return order_.before(items_[x], items_[y]); }

  SccInsertResult add_arc(VertexId v, VertexId w) {
    check_vertex(v, vertex_count());
    check_vertex(w, vertex_count());
    if (!stored_.insert(arc_key(v, w)).second) throw DuplicateArcError({v, w});
    trace_.clear();
    const VertexId fv = sets_.find(v), fw = sets_.find(w);
    rings_.add({v, w}, fv, fw);
    if (fv == fw || before(fv, fw)) return {};

    search(fv, fw);

    VertexId t = fv;
    for (VertexId x : search_.f_members)
      if (x != t && !out_done_[x] && before(x, t)) t = x;
    std::vector<VertexId> f_less, b_greater;
    for (VertexId x : search_.f_members)
      if (x != t && before(x, t)) f_less.push_back(x);
    for (VertexId y : search_.b_members)
      if (y != t && before(t, y)) b_greater.push_back(y);

    std::vector<Arc> Y;
    for (VertexId x : f_less)
      for (ArcIndex a : rings_.out_ring(x))
        if (const VertexId h = sets_.find(rings_.arc(a).head); h != x) Y.push_back({x, h});
    for (VertexId y : b_greater) {
      if (!in_done_[y]) trace_.b_greater_exhausted = false;
      for (ArcIndex a : rings_.in_ring(y))
        if (const VertexId tl = sets_.find(rings_.arc(a).tail); tl != y) Y.push_back({tl, y});
    }

    sort_group(f_less, Y);
    sort_group(b_greater, Y, /*forward=*/false);
    if (config_.trace) {
      trace_.pivot = t;
      trace_.f_less = f_less;
      trace_.b_greater = b_greater;
    }

    std::vector<VertexId> X = f_less;
    X.push_back(t);
    X.insert(X.end(), b_greater.begin(), b_greater.end());
    std::vector<VertexId> members = identify_new_component(X, Y, fw, fv);

    SccInsertResult result;
    if (t == fv) {
      OrderItem anchor = items_[fv];
      for (VertexId x : f_less) anchor = move_after(x, anchor);
    } else {
      OrderItem anchor = items_[t];
      for (auto it = f_less.rbegin(); it != f_less.rend(); ++it) anchor = move_before(*it, anchor);
      for (auto it = b_greater.rbegin(); it != b_greater.rend(); ++it) anchor = move_before(*it, anchor);
    }
    result.moved = std::move(b_greater);
    result.moved.insert(result.moved.end(), f_less.begin(), f_less.end());
    metrics_.vertex_moves += result.moved.size();
    metrics_.total_move_distance += result.moved.size();

    if (members.empty()) {
      result.outcome = SccOutcome::Reordered;
      return result;
    }
    result.outcome = SccOutcome::Merged;
    result.canonical = fv;
    for (VertexId x : members) {
      if (x == fv) continue;
      sets_.unite(fv, x);
      rings_.concat(fv, x);
      order_.erase(items_[x]);
    }
    result.absorbed = std::move(members);
    std::erase_if(result.moved, [&](VertexId x) { return sets_.find(x) != x; });
    return result;
  }

  /// For every arc between different components, the tail's component precedes the head's.
  bool condensation_is_topological() {
    for (ArcIndex a = 0; a < rings_.arc_count(); ++a) {
      const VertexId x = sets_.find(rings_.arc(a).tail), y = sets_.find(rings_.arc(a).head);
      if (x != y && !before(x, y)) return false;
    }
    return true;
  }

 private:
  void search(VertexId fv, VertexId fw) {
    search_.begin();
    visit_forward(fw);
    visit_backward(fv);
    SoftSearchHooks hooks;
    hooks.check_passivity = config_.check_passivity;
    if (config_.trace) hooks.thresholds = &trace_.thresholds;
    run_soft_threshold(
        search_, fv, [this](VertexId x, VertexId y) { return before(x, y); },
        [this](VertexId u, VertexId z) {
          step(u, z);
          return std::optional<Arc>{};
        },
        [this](VertexId x) { return order_.sort_key(items_[x]); }, config_.pivot, rng_, metrics_, hooks);
  }

  void visit_forward(VertexId x) {
    search_.visit_forward(x, rings_.first_out(x));
    out_done_[x] = rings_.first_out(x) == kNoArc;
  }

  void visit_backward(VertexId y) {
    search_.visit_backward(y, rings_.first_in(y));
    in_done_[y] = rings_.first_in(y) == kNoArc;
  }

  void step(VertexId u, VertexId z) {
    const ArcIndex fa = search_.out(u);
    const ArcIndex ba = search_.in(z);
    search_.out(u) = rings_.next_out(fa);
    search_.in(z) = rings_.next_in(ba);
    metrics_.arc_traversals += 2;
    if (config_.trace) trace_.steps.push_back({rings_.arc(fa), rings_.arc(ba)});
    const VertexId x = sets_.find(rings_.arc(fa).head);
    if (search_.out(u) == rings_.first_out(u)) {
      search_.forward.remove(u);
      out_done_[u] = 1;
    }
    const VertexId y = sets_.find(rings_.arc(ba).tail);
    if (search_.in(z) == rings_.first_in(z)) {
      search_.backward.remove(z);
      in_done_[z] = 1;
    }
    if (u == x) {
      rings_.unlink_out(fa, u);
      ++loop_deletions_;
    }
    if (y == z) {
      rings_.unlink_in(ba, z);
      ++loop_deletions_;
    }
    if (!search_.in_f(x)) visit_forward(x);
    if (!search_.in_b(y)) visit_backward(y);
  }

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

  DisjointSets sets_;
  CircularIncidence rings_;
  OrderList order_;
  std::vector<OrderItem> items_;
  SccSparseConfig config_;
  std::mt19937_64 rng_;
  Metrics metrics_;
  SoftSearchState search_;
  std::vector<std::uint8_t> out_done_, in_done_;
  std::unordered_set<std::uint64_t> stored_;
  std::uint64_t loop_deletions_ = 0;
  SccSearchTrace trace_;
};

}  // namespace itopo
