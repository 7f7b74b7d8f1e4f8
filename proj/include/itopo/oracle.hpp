#pragma once

// Static reference algorithms. Tests and the CLI checker compare the dynamic
// engines against these.

#include <algorithm>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "itopo/common.hpp"

namespace itopo {

struct StaticGraph {
  std::size_t n = 0;
  std::vector<std::vector<VertexId>> out;

  explicit StaticGraph(std::size_t vertex_count = 0) : n(vertex_count), out(vertex_count) {}

  StaticGraph(std::size_t vertex_count, std::span<const Arc> arcs) : StaticGraph(vertex_count) {
    for (const Arc& a : arcs) add(a);
  }

  void add(Arc a) {
    check_vertex(a.tail, n);
    check_vertex(a.head, n);
    out[a.tail].push_back(a.head);
  }
};

enum class ToposortMethod { Sources, Dfs };

struct ToposortResult {
  bool acyclic = true;
  std::vector<VertexId> order;  ///< valid when acyclic
  std::vector<VertexId> cycle;  ///< closed walk x0 -> x1 -> ... -> x0 when cyclic
};

namespace detail {

inline std::vector<VertexId> find_cycle(const StaticGraph& g) {
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> colour(g.n, kWhite);
  std::vector<VertexId> parent(g.n, kNoVertex);
  std::vector<std::pair<VertexId, std::size_t>> stack;
  for (VertexId root = 0; root < g.n; ++root) {
    if (colour[root] != kWhite) continue;
    colour[root] = kGrey;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      auto& [x, idx] = stack.back();
      if (idx == g.out[x].size()) {
        colour[x] = kBlack;
        stack.pop_back();
        continue;
      }
      const VertexId y = g.out[x][idx++];
      if (colour[y] == kGrey) {
        std::vector<VertexId> cycle{y};
        for (VertexId at = x; at != y; at = parent[at]) cycle.push_back(at);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (colour[y] == kWhite) {
        colour[y] = kGrey;
        parent[y] = x;
        stack.push_back({y, 0});
      }
    }
  }
  return {};
}

}  // namespace detail

/// Topological order by repeated source deletion or by DFS reverse postorder.
inline ToposortResult static_toposort(const StaticGraph& g, ToposortMethod method = ToposortMethod::Sources) {
  ToposortResult result;
  if (method == ToposortMethod::Sources) {
    std::vector<std::size_t> indegree(g.n, 0);
    for (const auto& succ : g.out)
      for (VertexId y : succ) ++indegree[y];
    std::deque<VertexId> sources;
    for (VertexId v = 0; v < g.n; ++v)
      if (indegree[v] == 0) sources.push_back(v);
    while (!sources.empty()) {
      const VertexId x = sources.front();
      sources.pop_front();
      result.order.push_back(x);
      for (VertexId y : g.out[x])
        if (--indegree[y] == 0) sources.push_back(y);
    }
  } else {
    std::vector<char> seen(g.n, 0);
    std::vector<std::pair<VertexId, std::size_t>> stack;
    for (VertexId root = 0; root < g.n; ++root) {
      if (seen[root]) continue;
      seen[root] = 1;
      stack.push_back({root, 0});
      while (!stack.empty()) {
        auto& [x, idx] = stack.back();
        if (idx == g.out[x].size()) {
          result.order.push_back(x);
          stack.pop_back();
          continue;
        }
        const VertexId y = g.out[x][idx++];
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back({y, 0});
        }
      }
    }
    std::reverse(result.order.begin(), result.order.end());
    // Reverse postorder is a valid order only for acyclic graphs; verify.
    std::vector<std::size_t> pos(g.n);
    for (std::size_t i = 0; i < result.order.size(); ++i) pos[result.order[i]] = i;
    bool ok = true;
    for (VertexId x = 0; x < g.n && ok; ++x)
      for (VertexId y : g.out[x])
        if (pos[x] >= pos[y]) ok = false;
    if (!ok) result.order.clear();
  }
  if (result.order.size() != g.n) {
    result.acyclic = false;
    result.order.clear();
    result.cycle = detail::find_cycle(g);
  }
  return result;
}

struct SccResult {
  /// component[v] is the index of v's component; indices follow a
  /// topological order of the condensation (arcs go from lower to higher).
  std::vector<std::uint32_t> component;
  std::size_t count = 0;
};

/// Linear-time strong components by lowlink depth-first search, iterative.
inline SccResult static_scc(const StaticGraph& g) {
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(g.n, kUnset), low(g.n, 0), comp(g.n, kUnset);
  std::vector<char> on_stack(g.n, 0);
  std::vector<VertexId> scc_stack;
  std::vector<std::pair<VertexId, std::size_t>> call;
  std::uint32_t next_index = 0, found = 0;

  for (VertexId root = 0; root < g.n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [x, idx] = call.back();
      if (idx < g.out[x].size()) {
        const VertexId y = g.out[x][idx++];
        if (index[y] == kUnset) {
          index[y] = low[y] = next_index++;
          scc_stack.push_back(y);
          on_stack[y] = 1;
          call.push_back({y, 0});
        } else if (on_stack[y]) {
          low[x] = std::min(low[x], index[y]);
        }
        continue;
      }
      if (low[x] == index[x]) {
        VertexId y;
        do {
          y = scc_stack.back();
          scc_stack.pop_back();
          on_stack[y] = 0;
          comp[y] = found;
        } while (y != x);
        ++found;
      }
      const VertexId done = x;
      call.pop_back();
      if (!call.empty()) {
        const VertexId p = call.back().first;
        low[p] = std::min(low[p], low[done]);
      }
    }
  }
  // Lowlink search emits sink components first.
  SccResult result;
  result.count = found;
  result.component.resize(g.n);
  for (VertexId v = 0; v < g.n; ++v) result.component[v] = found - 1 - comp[v];
  return result;
}

inline bool reachable(const StaticGraph& g, VertexId from, VertexId to) {
  check_vertex(from, g.n);
  check_vertex(to, g.n);
  if (from == to) return true;
  std::vector<char> seen(g.n, 0);
  std::vector<VertexId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (VertexId y : g.out[x]) {
      if (y == to) return true;
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

/// True iff every arc goes from an earlier to a later vertex of `order`.
inline bool is_topological(std::span<const VertexId> order, std::size_t n, std::span<const Arc> arcs) {
  if (order.size() != n) return false;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= n || pos[order[i]] != n) return false;
    pos[order[i]] = i;
  }
  return std::all_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return pos[a.tail] < pos[a.head]; });
}

/// True iff the two labelings induce the same partition of [0, n).
template <class A, class B>
bool same_partition(const std::vector<A>& x, const std::vector<B>& y) {
  if (x.size() != y.size()) return false;
  std::vector<std::pair<A, B>> seen_x;
  std::vector<std::pair<B, A>> seen_y;
  for (std::size_t v = 0; v < x.size(); ++v) {
    seen_x.push_back({x[v], y[v]});
    seen_y.push_back({y[v], x[v]});
  }
  std::sort(seen_x.begin(), seen_x.end());
  std::sort(seen_y.begin(), seen_y.end());
  for (std::size_t i = 1; i < seen_x.size(); ++i)
    if (seen_x[i].first == seen_x[i - 1].first && seen_x[i].second != seen_x[i - 1].second) return false;
  for (std::size_t i = 1; i < seen_y.size(); ++i)
    if (seen_y[i].first == seen_y[i - 1].first && seen_y[i].second != seen_y[i - 1].second) return false;
  return true;
}

}  // namespace itopo
