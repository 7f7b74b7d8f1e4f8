#pragma once

// Instance generators: adversarial constructions and seeded random workloads.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "itopo/common.hpp"

namespace itopo {

struct ArcSequence {
  std::size_t n = 0;
  std::vector<Arc> arcs;
};

/// Forces a local ordering algorithm to make at least p*k*(k+1)/2 vertex moves.
///
/// n = p(k+1) vertices in k+1 consecutive blocks P_1..P_{k+1} of p vertices.
/// The first n-k-1 arcs chain each block into a path; then for i = 1..k and
/// j = i+1..k+1 an arc runs from the last vertex of P_j to the first of P_i.
inline ArcSequence gen_local_lower_bound(std::size_t p, std::size_t k) {
  if (p < 1 || p > k) throw std::invalid_argument("local lower bound needs 1 <= p <= k");
  ArcSequence seq;
  seq.n = p * (k + 1);
  auto first = [p](std::size_t block) { return static_cast<VertexId>((block - 1) * p); };
  auto last = [p](std::size_t block) { return static_cast<VertexId>(block * p - 1); };
  for (std::size_t block = 1; block <= k + 1; ++block)
    for (VertexId x = first(block); x < last(block); ++x) seq.arcs.push_back({x, x + 1});
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = i + 1; j <= k + 1; ++j) seq.arcs.push_back({last(j), first(i)});
  return seq;
}

/// A Hamiltonian path n-1 -> n-2 -> ... -> 0, against the initial vertex
/// order, with arcs added alternately from the two ends of the path.
inline ArcSequence gen_path(std::size_t n) {
  ArcSequence seq;
  seq.n = n;
  if (n < 2) return seq;
  // Arc e (0-based along the path) joins path positions e and e+1.
  auto path_arc = [n](std::size_t e) {
    return Arc{static_cast<VertexId>(n - 1 - e), static_cast<VertexId>(n - 2 - e)};
  };
  std::size_t lo = 0, hi = n - 2;
  while (lo <= hi) {
    seq.arcs.push_back(path_arc(lo++));
    if (lo <= hi) seq.arcs.push_back(path_arc(hi--));
  }
  return seq;
}

enum class RandomMode { Acyclic, Arbitrary };

/// m distinct arcs on n vertices, reproducible from `seed`.
///
/// Acyclic: a hidden random permutation is drawn and every arc points forward
/// in it. Arbitrary: m distinct unordered pairs, each oriented by a coin flip,
/// so m = n(n-1)/2 yields a complete orientation.
inline ArcSequence gen_random(std::size_t n, std::size_t m, std::uint64_t seed, RandomMode mode) {
  const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > pairs) throw std::invalid_argument("requested more arcs than vertex pairs");
  std::mt19937_64 rng(seed);
  ArcSequence seq;
  seq.n = n;
  seq.arcs.reserve(m);

  std::vector<VertexId> hidden(n);
  std::iota(hidden.begin(), hidden.end(), VertexId{0});
  if (mode == RandomMode::Acyclic) std::shuffle(hidden.begin(), hidden.end(), rng);

  auto emit = [&](std::uint64_t a, std::uint64_t b) {  // a < b, indices into hidden
    Arc arc{hidden[a], hidden[b]};
    if (mode == RandomMode::Arbitrary && (rng() & 1)) std::swap(arc.tail, arc.head);
    seq.arcs.push_back(arc);
  };

  if (m * 3 >= pairs) {
    // Dense request: shuffle the full pair list.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
    all.reserve(pairs);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b) all.push_back({a, b});
    std::shuffle(all.begin(), all.end(), rng);
    for (std::size_t e = 0; e < m; ++e) emit(all[e].first, all[e].second);
  } else {
    std::unordered_set<std::uint64_t> used;
    used.reserve(m * 2);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    while (seq.arcs.size() < m) {
      std::uint64_t a = pick(rng), b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!used.insert(a * n + b).second) continue;
      emit(a, b);
    }
  }
  return seq;
}

/// Every arc of the random total order `hidden`, inserted in random order.
inline ArcSequence gen_complete_dag(std::size_t n, std::uint64_t seed) {
  return gen_random(n, n < 2 ? 0 : n * (n - 1) / 2, seed, RandomMode::Acyclic);
}

}  // namespace itopo
