#pragma once

// Helpers shared by the component engines: finding the component closed by a
// new arc inside a small condensed subgraph, and sorting a group of vertices
// by the arcs among them.

#include <algorithm>
#include <span>
#include <unordered_map>
#include <vector>

#include "itopo/common.hpp"

namespace itopo {

/// Vertices of X on some path from fw to fv using arcs of Y (arcs with an end
/// outside X are ignored). Empty when fv is unreachable. Depth-first from fw;
/// fv is marked when reached and a vertex is marked on retreat from a marked
/// child.
inline std::vector<VertexId> identify_new_component(std::span<const VertexId> X, std::span<const Arc> Y, VertexId fw,
                                                    VertexId fv) {
  std::unordered_map<VertexId, std::uint32_t> local;
  local.reserve(X.size() * 2);
  for (VertexId x : X) local.emplace(x, static_cast<std::uint32_t>(local.size()));
  const auto iw = local.find(fw), iv = local.find(fv);
  if (iw == local.end() || iv == local.end()) return {};
  const std::size_t k = local.size();
  std::vector<VertexId> ids(k);
  for (auto& [x, i] : local) ids[i] = x;
  std::vector<std::vector<std::uint32_t>> out(k);
  for (const Arc& a : Y) {
    auto t = local.find(a.tail), h = local.find(a.head);
    if (t != local.end() && h != local.end()) out[t->second].push_back(h->second);
  }
  std::vector<char> seen(k, 0), marked(k, 0);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{iw->second, 0}};
  seen[iw->second] = 1;
  if (iw->second == iv->second) marked[iv->second] = 1;
  while (!stack.empty()) {
    auto& [x, at] = stack.back();
    if (at == out[x].size()) {
      const std::uint32_t done = x;
      stack.pop_back();
      if (!stack.empty() && marked[done]) marked[stack.back().first] = 1;
      continue;
    }
    const std::uint32_t y = out[x][at++];
    if (!seen[y]) {
      seen[y] = 1;
      if (y == iv->second) marked[y] = 1;
      stack.push_back({y, 0});
    } else if (marked[y]) {
      marked[x] = 1;
    }
  }
  std::vector<VertexId> members;
  for (std::uint32_t i = 0; i < k; ++i)
    if (marked[i]) members.push_back(ids[i]);
  return members;
}

/// Reorders `group` topologically with respect to the arcs of Y among its
/// members by depth-first search from each member in turn: reverse postorder
/// over outgoing arcs, or postorder over incoming arcs when `forward` is false.
inline void sort_group(std::vector<VertexId>& group, std::span<const Arc> Y, bool forward = true) {
  if (group.size() < 2) return;
  std::unordered_map<VertexId, std::uint32_t> local;
  local.reserve(group.size() * 2);
  for (VertexId x : group) local.emplace(x, static_cast<std::uint32_t>(local.size()));
  std::vector<std::vector<std::uint32_t>> adj(group.size());
  for (const Arc& a : Y) {
    auto t = local.find(a.tail), h = local.find(a.head);
    if (t == local.end() || h == local.end() || t->second == h->second) continue;
    if (forward) adj[t->second].push_back(h->second);
    else adj[h->second].push_back(t->second);
  }
  enum : char { kNew, kOpen, kDone };
  std::vector<char> state(group.size(), kNew);
  std::vector<VertexId> sorted;
  sorted.reserve(group.size());
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t root = 0; root < group.size(); ++root) {
    if (state[root] != kNew) continue;
    state[root] = kOpen;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      auto& [x, at] = stack.back();
      if (at == adj[x].size()) {
        state[x] = kDone;
        sorted.push_back(group[x]);
        stack.pop_back();
        continue;
      }
      const std::uint32_t y = adj[x][at++];
      if (state[y] == kOpen) throw InternalError("group to sort is not acyclic");
      if (state[y] == kNew) {
        state[y] = kOpen;
        stack.push_back({y, 0});
      }
    }
  }
  if (forward) std::reverse(sorted.begin(), sorted.end());
  group = std::move(sorted);
}

}  // namespace itopo
