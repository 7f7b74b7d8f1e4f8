#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "itopo/generators.hpp"
#include "itopo/oracle.hpp"
#include "itopo/sparse_engine.hpp"

using namespace itopo;

namespace {

// All-pairs reachability by repeated DFS.
std::vector<std::vector<char>> closure(const StaticGraph& g) {
  std::vector<std::vector<char>> r(g.n, std::vector<char>(g.n, 0));
  for (VertexId s = 0; s < g.n; ++s) {
    std::vector<VertexId> stack{s};
    r[s][s] = 1;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : g.out[x])
        if (!r[s][y]) {
          r[s][y] = 1;
          stack.push_back(y);
        }
    }
  }
  return r;
}

bool has_cycle_brute_force(const StaticGraph& g) {
  const auto r = closure(g);
  for (VertexId x = 0; x < g.n; ++x)
    for (VertexId y : g.out[x])
      if (r[y][x]) return true;
  return false;
}

}  // namespace

TEST(StaticToposort, EmptyAndPath) {
  for (auto method : {ToposortMethod::Sources, ToposortMethod::Dfs}) {
    StaticGraph empty(3);
    auto r = static_toposort(empty, method);
    EXPECT_TRUE(r.acyclic);
    EXPECT_TRUE(is_topological(r.order, 3, {}));
    std::vector<Arc> path{{0, 1}, {1, 2}};
    auto p = static_toposort(StaticGraph(3, path), method);
    EXPECT_EQ(p.order, (std::vector<VertexId>{0, 1, 2}));
  }
}

TEST(StaticToposort, VerdictMatchesBruteForceAndCertificateIsACycle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    const std::size_t m = rng() % (std::min<std::size_t>(n * (n - 1) / 2, 3 * n) + 1);
    auto seq = gen_random(n, m, rng(), trial % 2 ? RandomMode::Arbitrary : RandomMode::Acyclic);
    StaticGraph g(n, seq.arcs);
    const bool cyclic = has_cycle_brute_force(g);
    for (auto method : {ToposortMethod::Sources, ToposortMethod::Dfs}) {
      auto r = static_toposort(g, method);
      ASSERT_EQ(r.acyclic, !cyclic);
      if (r.acyclic) {
        EXPECT_TRUE(is_topological(r.order, n, seq.arcs));
      } else {
        ASSERT_GE(r.cycle.size(), 2u);
        for (std::size_t i = 0; i < r.cycle.size(); ++i) {
          const VertexId x = r.cycle[i], y = r.cycle[(i + 1) % r.cycle.size()];
          EXPECT_TRUE(std::find(g.out[x].begin(), g.out[x].end(), y) != g.out[x].end());
        }
      }
    }
  }
}

TEST(StaticScc, TriangleAndSingleArc) {
  std::vector<Arc> tri{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_EQ(static_scc(StaticGraph(3, tri)).count, 1u);
  std::vector<Arc> one{{1, 0}};
  auto r = static_scc(StaticGraph(2, one));
  EXPECT_EQ(r.count, 2u);
  EXPECT_LT(r.component[1], r.component[0]);
}

TEST(StaticScc, MatchesMutualReachability) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    auto seq = gen_random(n, rng() % (n * (n - 1) / 2 + 1), rng(), RandomMode::Arbitrary);
    StaticGraph g(n, seq.arcs);
    const auto r = closure(g);
    const auto scc = static_scc(g);
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = 0; y < n; ++y) ASSERT_EQ(scc.component[x] == scc.component[y], r[x][y] && r[y][x]);
    for (const Arc& a : seq.arcs) ASSERT_LE(scc.component[a.tail], scc.component[a.head]);
  }
}

TEST(Reachable, SmallCases) {
  std::vector<Arc> arcs{{0, 1}};
  StaticGraph g(2, arcs);
  EXPECT_TRUE(reachable(g, 0, 1));
  EXPECT_FALSE(reachable(g, 1, 0));
  std::vector<Arc> chain{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
  StaticGraph c(6, chain);
  EXPECT_TRUE(reachable(c, 0, 5));
  EXPECT_FALSE(reachable(c, 5, 0));
}

TEST(SamePartition, DetectsRelabelingAndSplits) {
  EXPECT_TRUE(same_partition(std::vector<int>{0, 0, 1}, std::vector<unsigned>{7, 7, 3}));
  EXPECT_FALSE(same_partition(std::vector<int>{0, 0, 1}, std::vector<int>{0, 1, 1}));
  EXPECT_FALSE(same_partition(std::vector<int>{0, 1, 1}, std::vector<int>{0, 0, 0}));
}

TEST(LocalLowerBound, SizesAndFirstForcingArc) {
  auto seq = gen_local_lower_bound(3, 3);
  EXPECT_EQ(seq.n, 12u);
  EXPECT_EQ(seq.arcs.size(), 14u);
  // The first n-k-1 arcs build the paths; the next one is (6,1) in 1-based numbering.
  EXPECT_EQ(seq.arcs[12 - 3 - 1], (Arc{5, 0}));
  const std::vector<Arc> forcing(seq.arcs.begin() + 8, seq.arcs.end());
  EXPECT_EQ(forcing, (std::vector<Arc>{{5, 0}, {8, 0}, {11, 0}, {8, 3}, {11, 3}, {11, 6}}));

  auto tiny = gen_local_lower_bound(1, 1);
  EXPECT_EQ(tiny.n, 2u);
  EXPECT_EQ(tiny.arcs, (std::vector<Arc>{{1, 0}}));
  EXPECT_THROW(gen_local_lower_bound(4, 3), std::invalid_argument);
  EXPECT_THROW(gen_local_lower_bound(0, 3), std::invalid_argument);

  for (std::size_t k = 1; k <= 12; ++k)
    for (std::size_t p = 1; p <= k; ++p) {
      auto s = gen_local_lower_bound(p, k);
      const std::size_t n = p * (k + 1);
      EXPECT_EQ(s.n, n);
      EXPECT_EQ(s.arcs.size(), n - k - 1 + k * (k + 1) / 2);
      EXPECT_TRUE(static_toposort(StaticGraph(s.n, s.arcs)).acyclic);
    }
}

TEST(LocalLowerBound, ForcesMovesInSparseEngine) {
  for (auto [p, k] : {std::pair<std::size_t, std::size_t>{3, 3}, {10, 10}, {2, 7}}) {
    for (auto mode : {SearchMode::SoftThreshold, SearchMode::Limited}) {
      auto seq = gen_local_lower_bound(p, k);
      SparseEngine eng(seq.n, {.mode = mode});
      for (const Arc& a : seq.arcs) eng.add_arc(a.tail, a.head);
      EXPECT_GE(eng.metrics().vertex_moves, p * k * (k + 1) / 2);
    }
  }
}

TEST(PathGenerator, ShapeAndHamiltonian) {
  EXPECT_EQ(gen_path(2).arcs, (std::vector<Arc>{{1, 0}}));
  EXPECT_EQ(gen_path(4).arcs, (std::vector<Arc>{{3, 2}, {1, 0}, {2, 1}}));
  for (std::size_t n : {1u, 2u, 5u, 30u}) {
    auto seq = gen_path(n);
    ASSERT_EQ(seq.arcs.size(), n - (n > 0 ? 1 : 0));
    std::vector<int> outdeg(n, 0), indeg(n, 0);
    for (const Arc& a : seq.arcs) {
      ++outdeg[a.tail];
      ++indeg[a.head];
      EXPECT_EQ(a.tail, a.head + 1);
    }
    for (std::size_t v = 0; v < n; ++v) {
      EXPECT_LE(outdeg[v], 1);
      EXPECT_LE(indeg[v], 1);
    }
  }
}

TEST(RandomGenerator, AcyclicModeNeverCycles) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 50;
    auto seq = gen_random(n, rng() % (n * (n - 1) / 2 + 1), rng(), RandomMode::Acyclic);
    EXPECT_TRUE(static_toposort(StaticGraph(n, seq.arcs)).acyclic);
    std::set<Arc> distinct(seq.arcs.begin(), seq.arcs.end());
    EXPECT_EQ(distinct.size(), seq.arcs.size());
  }
}

TEST(RandomGenerator, CompleteOrientationAndDeterminism) {
  auto seq = gen_random(9, 36, 42, RandomMode::Arbitrary);
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const Arc& a : seq.arcs) pairs.insert(std::minmax(a.tail, a.head));
  EXPECT_EQ(pairs.size(), 36u);
  EXPECT_EQ(gen_random(30, 100, 5, RandomMode::Arbitrary).arcs, gen_random(30, 100, 5, RandomMode::Arbitrary).arcs);
  EXPECT_NE(gen_random(30, 100, 5, RandomMode::Arbitrary).arcs, gen_random(30, 100, 6, RandomMode::Arbitrary).arcs);
  EXPECT_THROW(gen_random(3, 4, 0, RandomMode::Acyclic), std::invalid_argument);
  auto dag = gen_complete_dag(12, 3);
  EXPECT_EQ(dag.arcs.size(), 66u);
  EXPECT_TRUE(static_toposort(StaticGraph(12, dag.arcs)).acyclic);
}
