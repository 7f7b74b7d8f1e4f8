#pragma once

// Dynamic ordered list: order queries, adjacent insertion and deletion in
// constant amortized time.
//
// Two-level list labeling. Items live in buckets of at most kBucketCapacity
// items; each item carries a 64-bit tag that orders it inside its bucket and
// each bucket carries a tag that orders it in the bucket list. Comparing two
// items compares bucket tags, then item tags. A full bucket splits in two; a
// crowded bucket-tag neighbourhood is relabelled over the smallest enclosing
// aligned tag range whose density is below a geometric threshold.

#include <atomic>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "itopo/common.hpp"

namespace itopo {

/// Handle to one element of an OrderList. Stale handles are detected.
struct OrderItem {
  std::uint32_t slot = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t generation = 0;
  std::uint32_t list = 0;

  friend bool operator==(const OrderItem&, const OrderItem&) = default;
};

enum class Order { Before, After };

class OrderList {
 public:
  static constexpr std::uint32_t kBucketCapacity = 64;

  OrderList() : id_(next_list_id()) {}

  OrderList(const OrderList&) = delete;
  OrderList& operator=(const OrderList&) = delete;
  OrderList(OrderList&&) noexcept = default;
  OrderList& operator=(OrderList&&) noexcept = default;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Total tags rewritten so far (items plus buckets).
  std::uint64_t relabel_work() const noexcept { return relabel_work_; }

  OrderItem push_back(std::uint32_t payload = 0) {
    if (last_bucket_ == kNone) return insert_first(payload);
    return insert_after_slot(buckets_[last_bucket_].last, payload);
  }

  OrderItem push_front(std::uint32_t payload = 0) {
    if (first_bucket_ == kNone) return insert_first(payload);
    return insert_before_slot(buckets_[first_bucket_].first, payload);
  }

  OrderItem insert_after(OrderItem anchor, std::uint32_t payload = 0) {
    validate(anchor);
    return insert_after_slot(anchor.slot, payload);
  }

  OrderItem insert_before(OrderItem anchor, std::uint32_t payload = 0) {
    validate(anchor);
    return insert_before_slot(anchor.slot, payload);
  }

  void erase(OrderItem x) {
    validate(x);
    Node& node = nodes_[x.slot];
    Bucket& b = buckets_[node.bucket];
    const std::uint32_t bucket = node.bucket;
    if (node.prev != kNone) nodes_[node.prev].next = node.next;
    if (node.next != kNone) nodes_[node.next].prev = node.prev;
    if (b.first == x.slot) b.first = (node.next != kNone && nodes_[node.next].bucket == bucket) ? node.next : kNone;
    if (b.last == x.slot) b.last = (node.prev != kNone && nodes_[node.prev].bucket == bucket) ? node.prev : kNone;
    if (--b.size == 0) erase_bucket(bucket);
    node.live = false;
    ++node.generation;
    node.prev = node.next = kNone;
    free_nodes_.push_back(x.slot);
    --size_;
  }

  Order order(OrderItem x, OrderItem y) const { return before(x, y) ? Order::Before : Order::After; }

  /// True iff x occurs strictly before y.
  bool before(OrderItem x, OrderItem y) const {
    validate(x);
    validate(y);
    if (x.slot == y.slot) throw UsageError("order query on an item against itself");
    return key(x.slot) < key(y.slot);
  }

  bool live(OrderItem x) const noexcept {
    return x.list == id_ && x.slot < nodes_.size() && nodes_[x.slot].live &&
           nodes_[x.slot].generation == x.generation;
  }

  std::uint32_t payload(OrderItem x) const {
    validate(x);
    return nodes_[x.slot].payload;
  }

  /// Sort key consistent with `before`, valid until the next mutation.
  std::pair<std::uint64_t, std::uint64_t> sort_key(OrderItem x) const {
    validate(x);
    return key(x.slot);
  }

  /// Payloads of all live items, front to back.
  std::vector<std::uint32_t> payloads() const {
    std::vector<std::uint32_t> out;
    out.reserve(size_);
    std::uint32_t at = first_bucket_ == kNone ? kNone : buckets_[first_bucket_].first;
    for (; at != kNone; at = nodes_[at].next) out.push_back(nodes_[at].payload);
    return out;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  // Item tags lie strictly inside (0, kItemSpan); bucket tags in [0, kBucketSpan).
  static constexpr std::uint64_t kItemSpan = std::uint64_t{1} << 63;
  static constexpr int kBucketBits = 62;
  static constexpr std::uint64_t kBucketSpan = std::uint64_t{1} << kBucketBits;
  // A tag range of size 2^i may hold at most (2/1.4)^i buckets before relabelling widens.
  static constexpr double kDensityBase = 2.0 / 1.4;

  struct Node {
    std::uint64_t tag = 0;
    std::uint32_t bucket = kNone;
    std::uint32_t prev = kNone;
    std::uint32_t next = kNone;
    std::uint32_t generation = 0;
    std::uint32_t payload = 0;
    bool live = false;
  };

  struct Bucket {
    std::uint64_t tag = 0;
    std::uint32_t prev = kNone;
    std::uint32_t next = kNone;
    std::uint32_t first = kNone;
    std::uint32_t last = kNone;
    std::uint32_t size = 0;
  };

  static std::uint32_t next_list_id() {
    static std::atomic<std::uint32_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  void validate(OrderItem x) const {
    if (x.list != id_) throw UsageError("order-list handle belongs to a different list");
    if (x.slot >= nodes_.size() || !nodes_[x.slot].live || nodes_[x.slot].generation != x.generation) {
      throw UsageError("order-list handle is not live");
    }
  }

  std::pair<std::uint64_t, std::uint64_t> key(std::uint32_t slot) const {
    const Node& n = nodes_[slot];
    return {buckets_[n.bucket].tag, n.tag};
  }

  std::uint32_t new_node(std::uint32_t payload) {
    std::uint32_t slot;
    if (!free_nodes_.empty()) {
      slot = free_nodes_.back();
      free_nodes_.pop_back();
    } else {
      slot = static_cast<std::uint32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    Node& n = nodes_[slot];
    n.live = true;
    n.payload = payload;
    n.prev = n.next = kNone;
    ++size_;
    return slot;
  }

  std::uint32_t new_bucket() {
    std::uint32_t id;
    if (!free_buckets_.empty()) {
      id = free_buckets_.back();
      free_buckets_.pop_back();
      buckets_[id] = Bucket{};
    } else {
      id = static_cast<std::uint32_t>(buckets_.size());
      buckets_.emplace_back();
    }
    return id;
  }

  OrderItem handle(std::uint32_t slot) const { return {slot, nodes_[slot].generation, id_}; }

  OrderItem insert_first(std::uint32_t payload) {
    const std::uint32_t b = new_bucket();
    buckets_[b].tag = kBucketSpan / 2;
    first_bucket_ = last_bucket_ = b;
    const std::uint32_t slot = new_node(payload);
    Node& n = nodes_[slot];
    n.bucket = b;
    n.tag = kItemSpan / 2;
    buckets_[b].first = buckets_[b].last = slot;
    buckets_[b].size = 1;
    return handle(slot);
  }

  OrderItem insert_after_slot(std::uint32_t anchor, std::uint32_t payload) {
    if (buckets_[nodes_[anchor].bucket].size == kBucketCapacity) split(nodes_[anchor].bucket);
    const std::uint32_t b = nodes_[anchor].bucket;
    const std::uint32_t slot = new_node(payload);
    const std::uint32_t after = nodes_[anchor].next;
    Node& n = nodes_[slot];
    n.bucket = b;
    n.prev = anchor;
    n.next = after;
    nodes_[anchor].next = slot;
    if (after != kNone) nodes_[after].prev = slot;
    Bucket& bucket = buckets_[b];
    if (bucket.last == anchor) bucket.last = slot;
    ++bucket.size;
    place_tag(slot);
    return handle(slot);
  }

  OrderItem insert_before_slot(std::uint32_t anchor, std::uint32_t payload) {
    if (buckets_[nodes_[anchor].bucket].size == kBucketCapacity) split(nodes_[anchor].bucket);
    const std::uint32_t b = nodes_[anchor].bucket;
    const std::uint32_t slot = new_node(payload);
    const std::uint32_t before = nodes_[anchor].prev;
    Node& n = nodes_[slot];
    n.bucket = b;
    n.prev = before;
    n.next = anchor;
    nodes_[anchor].prev = slot;
    if (before != kNone) nodes_[before].next = slot;
    Bucket& bucket = buckets_[b];
    if (bucket.first == anchor) bucket.first = slot;
    ++bucket.size;
    place_tag(slot);
    return handle(slot);
  }

  // Gives `slot` a tag strictly between its in-bucket neighbours.
  void place_tag(std::uint32_t slot) {
    const std::uint32_t b = nodes_[slot].bucket;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const std::uint32_t p = nodes_[slot].prev;
      const std::uint32_t q = nodes_[slot].next;
      const std::uint64_t lo = (p != kNone && nodes_[p].bucket == b) ? nodes_[p].tag : 0;
      const std::uint64_t hi = (q != kNone && nodes_[q].bucket == b) ? nodes_[q].tag : kItemSpan;
      if (hi - lo >= 2) {
        nodes_[slot].tag = lo + (hi - lo) / 2;
        return;
      }
      spread_items(b);
    }
    throw InternalError("order list: no tag room after bucket relabel");
  }

  // Evenly respaces the item tags of bucket b.
  void spread_items(std::uint32_t b) {
    const Bucket& bucket = buckets_[b];
    const std::uint64_t gap = kItemSpan / (bucket.size + 1);
    std::uint64_t tag = gap;
    for (std::uint32_t at = bucket.first;; at = nodes_[at].next) {
      nodes_[at].tag = tag;
      tag += gap;
      ++relabel_work_;
      if (at == bucket.last) break;
    }
  }

  // Moves the upper half of bucket b into a fresh bucket right after it.
  void split(std::uint32_t b) {
    const std::uint32_t fresh = new_bucket();
    insert_bucket_after(b, fresh);
    Bucket& old = buckets_[b];
    std::uint32_t at = old.first;
    for (std::uint32_t k = 0; k < old.size / 2; ++k) at = nodes_[at].next;
    Bucket& nb = buckets_[fresh];
    nb.first = at;
    nb.last = old.last;
    nb.size = old.size - old.size / 2;
    old.last = nodes_[at].prev;
    old.size = old.size / 2;
    for (std::uint32_t x = nb.first;; x = nodes_[x].next) {
      nodes_[x].bucket = fresh;
      if (x == nb.last) break;
    }
    spread_items(b);
    spread_items(fresh);
  }

  void insert_bucket_after(std::uint32_t b, std::uint32_t fresh) {
    Bucket& nb = buckets_[fresh];
    nb.prev = b;
    nb.next = buckets_[b].next;
    if (nb.next != kNone) buckets_[nb.next].prev = fresh; else last_bucket_ = fresh;
    buckets_[b].next = fresh;

    const std::uint64_t lo = buckets_[b].tag;
    const std::uint64_t hi = nb.next != kNone ? buckets_[nb.next].tag : kBucketSpan;
    if (hi - lo >= 2) {
      nb.tag = lo + (hi - lo) / 2;
      return;
    }
    relabel_buckets_around(b);
  }

  // Finds the smallest aligned tag range around bucket b that is sparse enough
  // and spreads every bucket in it (including the one just linked after b).
  void relabel_buckets_around(std::uint32_t b) {
    const std::uint64_t anchor = buckets_[b].tag;
    std::uint32_t left = b;                  // leftmost bucket inside the range
    std::uint32_t right = buckets_[b].next;  // rightmost; starts at the untagged newcomer
    std::uint64_t count = 2;
    double capacity = 1.0;
    for (int bits = 1; bits <= kBucketBits; ++bits) {
      capacity *= kDensityBase;
      const std::uint64_t span = std::uint64_t{1} << bits;
      const std::uint64_t lo = anchor & ~(span - 1);
      const std::uint64_t hi = lo + span;  // exclusive
      while (buckets_[left].prev != kNone && buckets_[buckets_[left].prev].tag >= lo) {
        left = buckets_[left].prev;
        ++count;
      }
      std::uint32_t probe = buckets_[right].next;
      while (probe != kNone && buckets_[probe].tag < hi) {
        right = probe;
        ++count;
        probe = buckets_[probe].next;
      }
      if (static_cast<double>(count) <= capacity && count < span) {
        const std::uint64_t gap = span / count;
        std::uint64_t tag = lo;
        for (std::uint32_t at = left;; at = buckets_[at].next) {
          buckets_[at].tag = tag;
          tag += gap;
          ++relabel_work_;
          if (at == right) break;
        }
        return;
      }
    }
    throw InternalError("order list: bucket tag space exhausted");
  }

  void erase_bucket(std::uint32_t b) {
    Bucket& bucket = buckets_[b];
    if (bucket.prev != kNone) buckets_[bucket.prev].next = bucket.next; else first_bucket_ = bucket.next;
    if (bucket.next != kNone) buckets_[bucket.next].prev = bucket.prev; else last_bucket_ = bucket.prev;
    free_buckets_.push_back(b);
  }

  std::uint32_t id_;
  std::vector<Node> nodes_;
  std::vector<Bucket> buckets_;
  std::vector<std::uint32_t> free_nodes_;
  std::vector<std::uint32_t> free_buckets_;
  std::uint32_t first_bucket_ = kNone;
  std::uint32_t last_bucket_ = kNone;
  std::size_t size_ = 0;
  std::uint64_t relabel_work_ = 0;
};

}  // namespace itopo
