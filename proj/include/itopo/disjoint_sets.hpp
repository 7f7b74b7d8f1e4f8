#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "itopo/common.hpp"

namespace itopo {

/// Disjoint sets with union by rank and path compression. Each set has a
/// canonical vertex chosen by the caller, independent of the tree root.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0) { resize(n); }

  void resize(std::size_t n) {
    const std::size_t old = parent_.size();
    parent_.resize(n);
    rank_.resize(n, 0);
    canonical_.resize(n);
    std::iota(parent_.begin() + static_cast<std::ptrdiff_t>(old), parent_.end(), static_cast<VertexId>(old));
    std::iota(canonical_.begin() + static_cast<std::ptrdiff_t>(old), canonical_.end(), static_cast<VertexId>(old));
  }

  std::size_t size() const noexcept { return parent_.size(); }

  VertexId find(VertexId v) {
    check_vertex(v, size());
    VertexId root = v;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[v] != root) {
      const VertexId up = parent_[v];
      parent_[v] = root;
      v = up;
    }
    return canonical_[root];
  }

  bool is_canonical(VertexId v) { return find(v) == v; }

  /// Merges the sets of canonical vertices x and y; x becomes canonical.
  VertexId unite(VertexId x, VertexId y) {
    if (find(x) != x || find(y) != y) throw UsageError("unite needs canonical vertices");
    if (x == y) return x;
    VertexId rx = root_of(x), ry = root_of(y);
    if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
    parent_[ry] = rx;
    if (rank_[rx] == rank_[ry]) ++rank_[rx];
    canonical_[rx] = x;
    return x;
  }

 private:
  VertexId root_of(VertexId v) {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  std::vector<VertexId> parent_;
  std::vector<std::uint8_t> rank_;
  std::vector<VertexId> canonical_;
};

}  // namespace itopo
