#pragma once

// Mutable graph representations used by the engines: singly linked
// incidence lists, adjacency matrices, and circular incidence rings for
// component graphs.

#include <bit>
#include <cstdint>
#include <iterator>
#include <unordered_set>
#include <vector>

#include "itopo/common.hpp"

namespace itopo {

enum class InsertStatus { Inserted, Duplicate };

using ArcIndex = std::uint32_t;
inline constexpr ArcIndex kNoArc = static_cast<ArcIndex>(-1);

/// Walks a null-terminated or circular list of arc indices.
template <class NextFn>
class ArcListRange {
 public:
  class iterator {
   public:
    using value_type = ArcIndex;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(ArcIndex at, ArcIndex stop, const NextFn* next) : at_(at), stop_(stop), next_(next) {}

    ArcIndex operator*() const { return at_; }
    iterator& operator++() {
      at_ = (*next_)(at_);
      if (at_ == stop_) at_ = kNoArc;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.at_ == b.at_; }

   private:
    ArcIndex at_ = kNoArc;
    ArcIndex stop_ = kNoArc;
    const NextFn* next_ = nullptr;
  };

  ArcListRange(ArcIndex first, ArcIndex stop, NextFn next)
      : first_(first), stop_(stop), next_(std::move(next)) {}

  iterator begin() const { return iterator(first_, stop_, &next_); }
  iterator end() const { return iterator(kNoArc, stop_, &next_); }

 private:
  ArcIndex first_;
  ArcIndex stop_;
  NextFn next_;
};

/// Per-vertex outgoing and incoming arc lists, singly linked, with an exact
/// membership set guarding against multi-arcs. New arcs are prepended.
class SparseGraph {
 public:
  explicit SparseGraph(std::size_t n = 0) : first_out_(n, kNoArc), first_in_(n, kNoArc) {}

  std::size_t vertex_count() const noexcept { return first_out_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  VertexId add_vertex() {
    first_out_.push_back(kNoArc);
    first_in_.push_back(kNoArc);
    return static_cast<VertexId>(first_out_.size() - 1);
  }

  InsertStatus insert(Arc a) {
    check_vertex(a.tail, vertex_count());
    check_vertex(a.head, vertex_count());
    if (!members_.insert(arc_key(a.tail, a.head)).second) return InsertStatus::Duplicate;
    const auto idx = static_cast<ArcIndex>(arcs_.size());
    arcs_.push_back({a, first_out_[a.tail], first_in_[a.head]});
    first_out_[a.tail] = idx;
    first_in_[a.head] = idx;
    return InsertStatus::Inserted;
  }

  bool contains(Arc a) const {
    if (a.tail >= vertex_count() || a.head >= vertex_count()) return false;
    return members_.contains(arc_key(a.tail, a.head));
  }

  const Arc& arc(ArcIndex i) const { return arcs_[i].arc; }
  ArcIndex first_out(VertexId v) const { return first_out_[v]; }
  ArcIndex first_in(VertexId v) const { return first_in_[v]; }
  ArcIndex next_out(ArcIndex i) const { return arcs_[i].next_out; }
  ArcIndex next_in(ArcIndex i) const { return arcs_[i].next_in; }

  auto out_arcs(VertexId v) const {
    return ArcListRange(first_out_[v], kNoArc, [this](ArcIndex i) { return arcs_[i].next_out; });
  }
  auto in_arcs(VertexId v) const {
    return ArcListRange(first_in_[v], kNoArc, [this](ArcIndex i) { return arcs_[i].next_in; });
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(arcs_.size());
    for (const auto& rec : arcs_) out.push_back(rec.arc);
    return out;
  }

 private:
  struct Record {
    Arc arc;
    ArcIndex next_out;
    ArcIndex next_in;
  };

  std::vector<Record> arcs_;
  std::vector<ArcIndex> first_out_;
  std::vector<ArcIndex> first_in_;
  std::unordered_set<std::uint64_t> members_;
};

/// Contiguous n*n bit matrix. Row-major, each row padded to whole words.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n = 0) : n_(n), stride_((n + 63) / 64), words_(n * stride_, 0) {}

  std::size_t size() const noexcept { return n_; }

  bool test(VertexId v, VertexId w) const noexcept {
    return (words_[v * stride_ + (w >> 6)] >> (w & 63)) & 1u;
  }

  /// Returns true if the bit was previously clear.
  bool set(VertexId v, VertexId w) noexcept {
    auto& word = words_[v * stride_ + (w >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (w & 63);
    const bool fresh = (word & bit) == 0;
    word |= bit;
    return fresh;
  }

  void reset(VertexId v, VertexId w) noexcept {
    words_[v * stride_ + (w >> 6)] &= ~(std::uint64_t{1} << (w & 63));
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto word : words_) c += static_cast<std::size_t>(std::popcount(word));
    return c;
  }

 private:
  std::size_t n_;
  std::size_t stride_;
  std::vector<std::uint64_t> words_;
};

/// O(n + m) space alternative to BitMatrix with the same interface.
class HashedMatrix {
 public:
  explicit HashedMatrix(std::size_t n = 0) : n_(n) {}

  std::size_t size() const noexcept { return n_; }
  bool test(VertexId v, VertexId w) const { return bits_.contains(arc_key(v, w)); }
  bool set(VertexId v, VertexId w) { return bits_.insert(arc_key(v, w)).second; }
  void reset(VertexId v, VertexId w) { bits_.erase(arc_key(v, w)); }
  std::size_t count() const noexcept { return bits_.size(); }

 private:
  std::size_t n_;
  std::unordered_set<std::uint64_t> bits_;
};

template <class M>
concept AdjacencyMatrix = requires(M m, const M cm, VertexId v) {
  { cm.size() } -> std::convertible_to<std::size_t>;
  { cm.test(v, v) } -> std::convertible_to<bool>;
  { m.set(v, v) } -> std::convertible_to<bool>;
  m.reset(v, v);
  { cm.count() } -> std::convertible_to<std::size_t>;
};

/// Matrix-backed arc store for the dense engine: A(v,w) = 1 iff (v,w) stored.
template <AdjacencyMatrix Matrix = BitMatrix>
class DenseGraph {
 public:
  explicit DenseGraph(std::size_t n = 0) : matrix_(n) {}

  std::size_t vertex_count() const noexcept { return matrix_.size(); }
  std::size_t arc_count() const noexcept { return m_; }

  InsertStatus insert(Arc a) {
    check_vertex(a.tail, vertex_count());
    check_vertex(a.head, vertex_count());
    if (!matrix_.set(a.tail, a.head)) return InsertStatus::Duplicate;
    ++m_;
    return InsertStatus::Inserted;
  }

  bool has_arc(VertexId v, VertexId w) const { return matrix_.test(v, w); }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  Matrix matrix_;
  std::size_t m_ = 0;
};

/// Circular doubly linked outgoing and incoming arc rings, one pair per owner.
///
/// Each arc has an out-cell, living in the out-ring of some owner, and an
/// in-cell, living in the in-ring of some owner. Rings can be concatenated and
/// cells unlinked in constant time. Owners are whatever the caller maps
/// endpoints to (canonical vertices in the component engine).
class CircularIncidence {
 public:
  explicit CircularIncidence(std::size_t owners = 0)
      : out_head_(owners, kNoArc), in_head_(owners, kNoArc) {}

  std::size_t owner_count() const noexcept { return out_head_.size(); }
  std::size_t arc_count() const noexcept { return cells_.size(); }

  /// Stores `a`, prepending its cells to out-ring(out_owner) and in-ring(in_owner).
  ArcIndex add(Arc a, VertexId out_owner, VertexId in_owner) {
    const auto idx = static_cast<ArcIndex>(cells_.size());
    cells_.push_back({a, idx, idx, idx, idx, false, false});
    link_front(out_head_[out_owner], idx, &Cell::out_prev, &Cell::out_next);
    link_front(in_head_[in_owner], idx, &Cell::in_prev, &Cell::in_next);
    return idx;
  }

  const Arc& arc(ArcIndex i) const { return cells_[i].arc; }

  ArcIndex first_out(VertexId owner) const { return out_head_[owner]; }
  ArcIndex first_in(VertexId owner) const { return in_head_[owner]; }
  ArcIndex next_out(ArcIndex i) const { return cells_[i].out_next; }
  ArcIndex next_in(ArcIndex i) const { return cells_[i].in_next; }
  bool out_unlinked(ArcIndex i) const { return cells_[i].out_gone; }
  bool in_unlinked(ArcIndex i) const { return cells_[i].in_gone; }

  auto out_ring(VertexId owner) const {
    return ArcListRange(out_head_[owner], out_head_[owner],
                        [this](ArcIndex i) { return cells_[i].out_next; });
  }
  auto in_ring(VertexId owner) const {
    return ArcListRange(in_head_[owner], in_head_[owner],
                        [this](ArcIndex i) { return cells_[i].in_next; });
  }

  /// Appends the rings of `src` to those of `dst`; `src` is left empty.
  void concat(VertexId dst, VertexId src) {
    concat_out(dst, src);
    concat_in(dst, src);
  }

  void concat_out(VertexId dst, VertexId src) {
    guard_distinct(dst, src);
    splice(out_head_[dst], out_head_[src], &Cell::out_prev, &Cell::out_next);
  }

  void concat_in(VertexId dst, VertexId src) {
    guard_distinct(dst, src);
    splice(in_head_[dst], in_head_[src], &Cell::in_prev, &Cell::in_next);
  }

  /// Removes the out-cell of arc `i` from out-ring(owner).
  void unlink_out(ArcIndex i, VertexId owner) {
    if (cells_[i].out_gone) throw UsageError("out-cell already unlinked");
    unlink(out_head_[owner], i, &Cell::out_prev, &Cell::out_next);
    cells_[i].out_gone = true;
  }

  /// Removes the in-cell of arc `i` from in-ring(owner).
  void unlink_in(ArcIndex i, VertexId owner) {
    if (cells_[i].in_gone) throw UsageError("in-cell already unlinked");
    unlink(in_head_[owner], i, &Cell::in_prev, &Cell::in_next);
    cells_[i].in_gone = true;
  }

 private:
  struct Cell {
    Arc arc;
    ArcIndex out_prev, out_next, in_prev, in_next;
    bool out_gone, in_gone;
  };
  using Link = ArcIndex Cell::*;

  static void guard_distinct(VertexId dst, VertexId src) {
    if (dst == src) throw UsageError("cannot concatenate a ring with itself");
  }

  void link_front(ArcIndex& head, ArcIndex idx, Link prev, Link next) {
    if (head == kNoArc) {
      cells_[idx].*prev = idx;
      cells_[idx].*next = idx;
    } else {
      const ArcIndex tail = cells_[head].*prev;
      cells_[idx].*next = head;
      cells_[idx].*prev = tail;
      cells_[tail].*next = idx;
      cells_[head].*prev = idx;
    }
    head = idx;
  }

  void splice(ArcIndex& dst, ArcIndex& src, Link prev, Link next) {
    if (src == kNoArc) return;
    if (dst == kNoArc) {
      dst = src;
    } else {
      const ArcIndex dst_tail = cells_[dst].*prev;
      const ArcIndex src_tail = cells_[src].*prev;
      cells_[dst_tail].*next = src;
      cells_[src].*prev = dst_tail;
      cells_[src_tail].*next = dst;
      cells_[dst].*prev = src_tail;
    }
    src = kNoArc;
  }

  void unlink(ArcIndex& head, ArcIndex idx, Link prev, Link next) {
    const ArcIndex p = cells_[idx].*prev;
    const ArcIndex q = cells_[idx].*next;
    if (q == idx) {
      head = kNoArc;
    } else {
      cells_[p].*next = q;
      cells_[q].*prev = p;
      if (head == idx) head = q;
    }
    // Keep the forward link so a cursor parked on this cell can still advance.
    cells_[idx].*prev = idx;
  }

  std::vector<Cell> cells_;
  std::vector<ArcIndex> out_head_;
  std::vector<ArcIndex> in_head_;
};

}  // namespace itopo
