#pragma once

// Strong components under arc insertion, dense variant: topological search
// over an explicit numbering of canonical vertices and a condensed adjacency
// matrix indexed by canonical vertex.

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "itopo/common.hpp"
#include "itopo/dense_engine.hpp"
#include "itopo/disjoint_sets.hpp"
#include "itopo/engine_types.hpp"
#include "itopo/graph_store.hpp"
#include "itopo/metrics.hpp"
#include "itopo/new_component.hpp"

namespace itopo {

template <AdjacencyMatrix Matrix = BitMatrix>
class SccDenseEngine {
 public:
  explicit SccDenseEngine(std::size_t n) : sets_(n), matrix_(n), num_(n), alive_(n, 1) {
    canonical_.resize(n);
    for (VertexId v = 0; v < n; ++v) canonical_[v] = v;
  }

  std::size_t vertex_count() const noexcept { return sets_.size(); }
  std::size_t arc_count() const noexcept { return stored_.size(); }
  std::size_t component_count() const noexcept { return canonical_.size(); }
  const Metrics& metrics() const noexcept { return metrics_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  VertexId find(VertexId v) { return sets_.find(v); }

  std::vector<VertexId> components() {
    std::vector<VertexId> label(vertex_count());
    for (VertexId v = 0; v < label.size(); ++v) label[v] = sets_.find(v);
    return label;
  }

  /// 1-based number of canonical vertex x.
  std::uint32_t position(VertexId x) const { return num_.position(x); }
  std::vector<VertexId> canonical_order() const { return num_.order(); }

  SccInsertResult add_arc(VertexId v, VertexId w) {
    check_vertex(v, vertex_count());
    check_vertex(w, vertex_count());
    if (!stored_.insert(arc_key(v, w)).second) throw DuplicateArcError({v, w});
    const VertexId fv = sets_.find(v), fw = sets_.find(w);
    if (fv == fw) return {};
    matrix_.set(fv, fw);
    if (num_.position(fv) < num_.position(fw)) return {};

    auto arc = [this](VertexId x, VertexId y) { return matrix_.test(x, y); };
    SearchFrontier fr = topological_search(num_, fv, fw, arc, metrics_);
    const std::uint32_t k = fr.k;

    std::vector<VertexId> X = fr.forward.items;
    X.insert(X.end(), fr.backward.items.begin(), fr.backward.items.end());
    std::vector<Arc> Y;
    for (VertexId x : X)
      for (VertexId y : X) {
        if (x == y) continue;
        ++metrics_.arc_traversals;
        if (arc(x, y)) Y.push_back({x, y});
      }
    std::vector<VertexId> members = identify_new_component(X, Y, fw, fv);

    SccInsertResult result;
    auto moves = reorder_dense(num_, fr, arc, metrics_);
    for (const DenseMove& mv : moves) {
      result.moved.push_back(mv.vertex);
      metrics_.total_move_distance += mv.to > mv.from ? mv.to - mv.from : mv.from - mv.to;
    }
    metrics_.vertex_moves += moves.size();
    if (members.empty()) {
      result.outcome = SccOutcome::Reordered;
      return result;
    }

    const VertexId c = num_.vertex(k);
    if (std::find(members.begin(), members.end(), c) == members.end())
      throw InternalError("vertex at the meeting position is not in the new component");
    for (VertexId x : members) {
      if (x == c) continue;
      for (VertexId y : canonical_) {
        if (matrix_.test(x, y)) matrix_.set(c, y);
        if (matrix_.test(y, x)) matrix_.set(y, c);
        matrix_.reset(x, y);
        matrix_.reset(y, x);
      }
      sets_.unite(c, x);
      alive_[x] = 0;
      num_.clear_slot(num_.position(x));
    }
    matrix_.reset(c, c);
    num_.compact();
    std::erase_if(canonical_, [this](VertexId x) { return !alive_[x]; });
    std::erase_if(result.moved, [this](VertexId x) { return !alive_[x]; });
    result.outcome = SccOutcome::Merged;
    result.canonical = c;
    result.absorbed = std::move(members);
    return result;
  }

  /// Numbering is a topological order of the condensed matrix, with no empty slot.
  bool condensation_is_topological() const {
    if (num_.size() != canonical_.size()) return false;
    for (std::uint32_t i = 1; i <= num_.size(); ++i)
      if (num_.empty_slot(i) || !alive_[num_.vertex(i)]) return false;
    for (VertexId x : canonical_)
      for (VertexId y : canonical_)
        if (matrix_.test(x, y) && (x == y || num_.position(x) >= num_.position(y))) return false;
    return true;
  }

 private:
  DisjointSets sets_;
  Matrix matrix_;
  Numbering num_;
  std::vector<std::uint8_t> alive_;
  std::vector<VertexId> canonical_;  ///< live canonical vertices, any order
  std::unordered_set<std::uint64_t> stored_;
  Metrics metrics_;
};

}  // namespace itopo
