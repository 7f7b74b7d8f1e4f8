#pragma once

// Soft-threshold search machinery shared by the topological-order engine and
// the strong-component engine: per-search vertex state, the active/passive
// lists, threshold selection, and the main search loop. The engines supply
// the search step and the order comparison.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "itopo/common.hpp"
#include "itopo/graph_store.hpp"
#include "itopo/metrics.hpp"

namespace itopo {

enum class PivotRule { Median, Random };

/// Two intrusive doubly linked lists (active, passive) over vertex ids; a
/// vertex is in at most one of them. Insertion appends, so the front of a
/// list is the earliest-inserted vertex still present.
class ActivePassiveLists {
 public:
  enum Which : std::uint8_t { kActive = 0, kPassive = 1, kNone = 2 };

  void resize(std::size_t n) {
    prev_.assign(n, kNoVertex);
    next_.assign(n, kNoVertex);
    tag_.assign(n, kNone);
    head_[0] = head_[1] = tail_[0] = tail_[1] = kNoVertex;
    size_[0] = size_[1] = 0;
  }

  Which which(VertexId v) const { return static_cast<Which>(tag_[v]); }
  bool empty(Which l) const { return size_[l] == 0; }
  std::size_t size(Which l) const { return size_[l]; }
  VertexId front(Which l) const { return head_[l]; }
  VertexId next(VertexId v) const { return next_[v]; }

  void push_back(Which l, VertexId v) {
    prev_[v] = tail_[l];
    next_[v] = kNoVertex;
    if (tail_[l] != kNoVertex) next_[tail_[l]] = v; else head_[l] = v;
    tail_[l] = v;
    tag_[v] = l;
    ++size_[l];
  }

  void remove(VertexId v) {
    const auto l = tag_[v];
    if (l == kNone) return;
    if (prev_[v] != kNoVertex) next_[prev_[v]] = next_[v]; else head_[l] = next_[v];
    if (next_[v] != kNoVertex) prev_[next_[v]] = prev_[v]; else tail_[l] = prev_[v];
    tag_[v] = kNone;
    --size_[l];
  }

  void move_to(Which l, VertexId v) {
    remove(v);
    push_back(l, v);
  }

  void clear(Which l) {
    for (VertexId v = head_[l]; v != kNoVertex; v = next_[v]) tag_[v] = kNone;
    head_[l] = tail_[l] = kNoVertex;
    size_[l] = 0;
  }

  std::vector<VertexId> members(Which l) const {
    std::vector<VertexId> out;
    out.reserve(size_[l]);
    for (VertexId v = head_[l]; v != kNoVertex; v = next_[v]) out.push_back(v);
    return out;
  }

 private:
  std::vector<VertexId> prev_, next_;
  std::vector<std::uint8_t> tag_;
  VertexId head_[2]{kNoVertex, kNoVertex};
  VertexId tail_[2]{kNoVertex, kNoVertex};
  std::size_t size_[2]{0, 0};
};

/// Per-search state: the visited sets F and B, arc cursors, the four
/// live-vertex lists and the threshold. Membership uses epoch stamps so a
/// new search starts in O(1).
class SoftSearchState {
 public:
  void resize(std::size_t n) {
    f_stamp_.assign(n, 0);
    b_stamp_.assign(n, 0);
    out_.assign(n, kNoArc);
    in_.assign(n, kNoArc);
    forward.resize(n);
    backward.resize(n);
    epoch_ = 0;
  }

  void grow(std::size_t n) {
    f_stamp_.resize(n, 0);
    b_stamp_.resize(n, 0);
    out_.resize(n, kNoArc);
    in_.resize(n, kNoArc);
    forward.resize(n);
    backward.resize(n);
  }

  void begin() {
    if (++epoch_ == 0) {  // stamp wrap-around
      std::fill(f_stamp_.begin(), f_stamp_.end(), 0);
      std::fill(b_stamp_.begin(), b_stamp_.end(), 0);
      epoch_ = 1;
    }
    forward.clear(ActivePassiveLists::kActive);
    forward.clear(ActivePassiveLists::kPassive);
    backward.clear(ActivePassiveLists::kActive);
    backward.clear(ActivePassiveLists::kPassive);
    f_members.clear();
    b_members.clear();
  }

  bool in_f(VertexId v) const { return f_stamp_[v] == epoch_; }
  bool in_b(VertexId v) const { return b_stamp_[v] == epoch_; }

  /// Visits x forward with cursor `first`; x becomes active if the cursor is live.
  void visit_forward(VertexId x, ArcIndex first) {
    f_stamp_[x] = epoch_;
    f_members.push_back(x);
    out_[x] = first;
    if (first != kNoArc) forward.push_back(ActivePassiveLists::kActive, x);
  }

  void visit_backward(VertexId y, ArcIndex first) {
    b_stamp_[y] = epoch_;
    b_members.push_back(y);
    in_[y] = first;
    if (first != kNoArc) backward.push_back(ActivePassiveLists::kActive, y);
  }

  ArcIndex& out(VertexId x) { return out_[x]; }
  ArcIndex& in(VertexId y) { return in_[y]; }
  ArcIndex out(VertexId x) const { return out_[x]; }
  ArcIndex in(VertexId y) const { return in_[y]; }

  ActivePassiveLists forward;   ///< F_A and F_P
  ActivePassiveLists backward;  ///< B_A and B_P
  std::vector<VertexId> f_members;
  std::vector<VertexId> b_members;
  VertexId threshold = kNoVertex;

 private:
  std::vector<std::uint32_t> f_stamp_, b_stamp_;
  std::vector<ArcIndex> out_, in_;
  std::uint32_t epoch_ = 0;
};

/// Picks the new threshold among `candidates`.
///
/// Median: the lower median under `key` (key(x) < key(y) iff x precedes y).
/// Random: uniform over the candidates. `candidates` is reordered.
template <class KeyFn>
VertexId select_threshold(std::span<VertexId> candidates, PivotRule rule, KeyFn&& key, std::mt19937_64& rng,
                          Metrics& metrics) {
  if (candidates.empty()) throw UsageError("threshold selection needs at least one candidate");
  ++metrics.pivot_selections;
  if (candidates.size() == 1) return candidates.front();
  if (rule == PivotRule::Random) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(rng)];
  }
  using Key = decltype(key(candidates.front()));
  std::vector<std::pair<Key, VertexId>> keyed;
  keyed.reserve(candidates.size());
  for (VertexId x : candidates) keyed.push_back({key(x), x});
  const auto mid = keyed.begin() + static_cast<std::ptrdiff_t>((keyed.size() - 1) / 2);
  std::nth_element(keyed.begin(), mid, keyed.end());
  return mid->second;
}

/// Optional observation points inside the search loop, for tests and tracing.
struct SoftSearchHooks {
  std::vector<VertexId>* thresholds = nullptr;  ///< every threshold value, initial one included
  bool check_passivity = false;                 ///< assert the passive-side invariant each iteration
};

/// Runs the soft-threshold loop over `state`, which the caller has already
/// initialised with F = {w}, B = {v} and their cursors.
///
/// `less(x, y)` is the current order; `step(u, z)` performs one search step
/// and returns a cycle witness or nothing. Returns the first witness, or
/// nothing when the loop ends.
template <class Less, class Step, class KeyFn>
std::optional<Arc> run_soft_threshold(SoftSearchState& st, VertexId initial_threshold, Less&& less, Step&& step,
                                      KeyFn&& key, PivotRule rule, std::mt19937_64& rng, Metrics& metrics,
                                      const SoftSearchHooks& hooks = {}) {
  using L = ActivePassiveLists;
  auto& fwd = st.forward;
  auto& bwd = st.backward;
  st.threshold = initial_threshold;
  if (hooks.thresholds) hooks.thresholds->push_back(st.threshold);
  std::vector<VertexId> scratch;

  while (!fwd.empty(L::kActive) && !bwd.empty(L::kActive)) {
    ++metrics.loop_iterations;
    VertexId u = fwd.front(L::kActive);
    VertexId z = bwd.front(L::kActive);
    const VertexId s = st.threshold;
    if (u == z && u == s) {
      // Only possible when a vertex may be both forward and backward (component
      // search). Pair s with another active vertex; with none left, no
      // compatible pair exists: passive forward vertices lie after s and
      // passive backward ones before it.
      if (bwd.next(z) != kNoVertex) {
        z = bwd.next(z);
      } else if (fwd.next(u) != kNoVertex) {
        u = fwd.next(u);
      } else {
        break;
      }
    }
    if (u != z && less(u, z)) {
      ++metrics.search_steps;
      if (auto witness = step(u, z)) return witness;
    } else {
      if (u != s && less(s, u)) fwd.move_to(L::kPassive, u);
      if (z != s && less(z, s)) bwd.move_to(L::kPassive, z);
    }

    if (fwd.empty(L::kActive)) {
      bwd.clear(L::kPassive);
      if (bwd.which(st.threshold) == L::kActive) bwd.remove(st.threshold);
      if (!fwd.empty(L::kPassive)) {
        scratch = fwd.members(L::kPassive);
        st.threshold = select_threshold(std::span<VertexId>(scratch), rule, key, rng, metrics);
        if (hooks.thresholds) hooks.thresholds->push_back(st.threshold);
        for (VertexId x : fwd.members(L::kPassive))
          if (x == st.threshold || less(x, st.threshold)) fwd.move_to(L::kActive, x);
      }
    }
    if (bwd.empty(L::kActive)) {
      fwd.clear(L::kPassive);
      if (fwd.which(st.threshold) == L::kActive) fwd.remove(st.threshold);
      if (!bwd.empty(L::kPassive)) {
        scratch = bwd.members(L::kPassive);
        st.threshold = select_threshold(std::span<VertexId>(scratch), rule, key, rng, metrics);
        if (hooks.thresholds) hooks.thresholds->push_back(st.threshold);
        for (VertexId y : bwd.members(L::kPassive))
          if (y == st.threshold || less(st.threshold, y)) bwd.move_to(L::kActive, y);
      }
    }

    if (hooks.check_passivity) {
      for (VertexId x : fwd.members(L::kPassive))
        if (!less(st.threshold, x)) throw InternalError("passive forward vertex not after threshold");
      for (VertexId y : bwd.members(L::kPassive))
        if (!less(y, st.threshold)) throw InternalError("passive backward vertex not before threshold");
    }
  }
  return std::nullopt;
}

}  // namespace itopo
