#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "itopo/generators.hpp"
#include "itopo/oracle.hpp"
#include "itopo/sparse_engine.hpp"

using namespace itopo;
namespace fx = fixtures;

namespace {

SparseEngine make_instance(SearchMode mode, PivotRule pivot = PivotRule::Median) {
  SparseConfig cfg;
  cfg.mode = mode;
  cfg.pivot = pivot;
  cfg.trace = true;
  cfg.check_passivity = true;
  SparseEngine eng(12, cfg);
  for (const Arc& a : fx::two_way_instance()) EXPECT_EQ(eng.add_arc(a.tail, a.head).outcome, Outcome::NoSearch);
  return eng;
}

std::vector<std::size_t> positions(const std::vector<VertexId>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  return pos;
}

}  // namespace

TEST(SparseEngine, ForwardArcNeedsNoSearch) {
  SparseEngine eng(2);
  EXPECT_EQ(eng.add_arc(0, 1).outcome, Outcome::NoSearch);
  EXPECT_EQ(eng.metrics().arc_traversals, 0u);
  EXPECT_EQ(eng.order(), (std::vector<VertexId>{0, 1}));
}

TEST(SparseEngine, BackwardArcReorders) {
  for (auto mode : {SearchMode::Limited, SearchMode::SoftThreshold}) {
    SparseEngine eng(2, {.mode = mode});
    auto r = eng.add_arc(1, 0);
    EXPECT_EQ(r.outcome, Outcome::Reordered);
    EXPECT_TRUE(eng.before(1, 0));
    EXPECT_EQ(eng.order(), (std::vector<VertexId>{1, 0}));
  }
}

TEST(SparseEngine, LimitedSearchWitnessIsArcIntoV) {
  SparseEngine eng(3, {.mode = SearchMode::Limited});
  eng.add_arc(0, 1);
  eng.add_arc(1, 2);
  auto r = eng.add_arc(2, 0);
  ASSERT_EQ(r.outcome, Outcome::Cycle);
  EXPECT_EQ(*r.witness, (Arc{1, 2}));
  EXPECT_EQ(eng.status(), EngineStatus::CycleFound);
  EXPECT_THROW(eng.add_arc(0, 2), UsageError);
}

TEST(SparseEngine, DuplicateArcRejected) {
  SparseEngine eng(3);
  eng.add_arc(0, 1);
  EXPECT_THROW(eng.add_arc(0, 1), DuplicateArcError);
  EXPECT_EQ(eng.arc_count(), 1u);
  EXPECT_THROW(eng.add_arc(0, 7), std::out_of_range);
}

TEST(SparseEngine, SelfLoopIsCycle) {
  SparseEngine eng(2);
  auto r = eng.add_arc(1, 1);
  EXPECT_EQ(r.outcome, Outcome::Cycle);
  EXPECT_EQ(*r.witness, (Arc{1, 1}));
}

TEST(SparseEngine, TwoCycleProbeFoundInOneStep) {
  SparseEngine eng(2);
  eng.add_arc(0, 1);
  auto r = eng.add_arc(1, 0);
  ASSERT_EQ(r.outcome, Outcome::Cycle);
  EXPECT_EQ(eng.metrics().search_steps, 1u);
  EXPECT_EQ(eng.metrics().arc_traversals, 2u);
  EXPECT_EQ(*r.witness, (Arc{0, 1}));
}

TEST(SparseEngine, IsolatedEndpointsGiveZeroIterations) {
  SparseEngine eng(4);
  auto r = eng.add_arc(3, 0);
  EXPECT_EQ(r.outcome, Outcome::Reordered);
  EXPECT_EQ(eng.last_loop_iterations(), 0u);
  EXPECT_EQ(eng.order(), (std::vector<VertexId>{1, 2, 3, 0}));
}

TEST(SparseEngine, LimitedSearchOnNamedInstance) {
  auto eng = make_instance(SearchMode::Limited);
  auto r = eng.add_arc(fx::kTrigger.tail, fx::kTrigger.head);
  ASSERT_EQ(r.outcome, Outcome::Reordered);
  const auto& tr = eng.last_trace();
  std::set<VertexId> visited(tr.forward.begin(), tr.forward.end());
  EXPECT_EQ(visited, (std::set<VertexId>{fx::w, fx::c, fx::f, fx::h, fx::i}));
  EXPECT_EQ(fx::spell(r.moved), "wcfih");
  EXPECT_EQ(fx::spell(eng.order()), "abdegvwcfihj");
}

TEST(SparseEngine, SoftThresholdSearchOnNamedInstance) {
  auto eng = make_instance(SearchMode::SoftThreshold);
  auto r = eng.add_arc(fx::kTrigger.tail, fx::kTrigger.head);
  ASSERT_EQ(r.outcome, Outcome::Reordered);
  const auto& tr = eng.last_trace();
  EXPECT_EQ(fx::spell(tr.thresholds), "vdf");
  const std::vector<std::pair<Arc, Arc>> steps{{{fx::w, fx::h}, {fx::d, fx::v}},
                                               {{fx::w, fx::c}, {fx::g, fx::v}},
                                               {{fx::c, fx::f}, {fx::a, fx::d}},
                                               {{fx::f, fx::h}, {fx::e, fx::g}}};
  EXPECT_EQ(tr.steps, steps);
  EXPECT_EQ(tr.pivot, fx::f);
  EXPECT_EQ(std::set<VertexId>(tr.f_less.begin(), tr.f_less.end()), (std::set<VertexId>{fx::w, fx::c}));
  EXPECT_EQ(std::set<VertexId>(tr.b_greater.begin(), tr.b_greater.end()), (std::set<VertexId>{fx::g, fx::v}));
  EXPECT_EQ(fx::spell(eng.order()), "abdegvwcfhij");
  EXPECT_EQ(eng.metrics().pivot_selections, 2u);
}

TEST(SelectThreshold, SingletonAndMedians) {
  std::mt19937_64 rng(1);
  Metrics m;
  auto id = [](VertexId x) { return x; };
  std::vector<VertexId> one{7};
  EXPECT_EQ(select_threshold(std::span<VertexId>(one), PivotRule::Median, id, rng, m), 7u);
  EXPECT_EQ(select_threshold(std::span<VertexId>(one), PivotRule::Random, id, rng, m), 7u);
  std::vector<VertexId> five{9, 3, 5, 1, 7};
  EXPECT_EQ(select_threshold(std::span<VertexId>(five), PivotRule::Median, id, rng, m), 5u);
  EXPECT_EQ(m.pivot_selections, 3u);
  // Lower median against a sort-based oracle.
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<VertexId> cand(1 + rng() % 40);
    std::iota(cand.begin(), cand.end(), VertexId{0});
    std::shuffle(cand.begin(), cand.end(), rng);
    std::vector<VertexId> sorted = cand;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(select_threshold(std::span<VertexId>(cand), PivotRule::Median, id, rng, m),
              sorted[(sorted.size() - 1) / 2]);
  }
}

TEST(SelectThreshold, RandomRuleCoversAllCandidates) {
  std::mt19937_64 rng(5);
  Metrics m;
  std::vector<int> hits(4, 0);
  for (int trial = 0; trial < 4000; ++trial) {
    std::vector<VertexId> cand{0, 1, 2, 3};
    ++hits[select_threshold(std::span<VertexId>(cand), PivotRule::Random, [](VertexId x) { return x; }, rng, m)];
  }
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

// Vertices before v reachable from w through vertices before v.
TEST(SparseEngine, LimitedSearchVisitsBoundedReachableSet) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    const std::size_t m = rng() % (n * (n - 1) / 2 + 1);
    auto seq = gen_random(n, m, rng(), RandomMode::Acyclic);
    SparseEngine eng(n, {.mode = SearchMode::Limited});
    for (const Arc& a : seq.arcs) eng.add_arc(a.tail, a.head);
    // Probe a pair v after w with no path w -> v, then search without committing.
    const auto order = eng.order();
    const auto pos = positions(order);
    StaticGraph g(n, seq.arcs);
    for (int probe = 0; probe < 5; ++probe) {
      VertexId x = rng() % n, y = rng() % n;
      if (x == y) continue;
      if (pos[x] > pos[y]) std::swap(x, y);
      const VertexId w = x, v = y;
      if (reachable(g, w, v)) continue;
      std::vector<VertexId> post;
      ASSERT_FALSE(eng.limited_search(v, w, post));
      std::set<VertexId> expect{w};
      std::vector<VertexId> stack{w};
      while (!stack.empty()) {
        VertexId p = stack.back();
        stack.pop_back();
        for (VertexId q : g.out[p])
          if (pos[q] < pos[v] && expect.insert(q).second) stack.push_back(q);
      }
      EXPECT_EQ(std::set<VertexId>(post.begin(), post.end()), expect);
    }
  }
}

struct RandomRunCase {
  SearchMode mode;
  PivotRule pivot;
};

class SparseRandomRuns : public ::testing::TestWithParam<RandomRunCase> {};

TEST_P(SparseRandomRuns, MatchesOracleAndKeepsInvariants) {
  const auto [mode, pivot] = GetParam();
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const std::size_t m = rng() % (n * (n - 1) / 2 + 1);
    auto seq = gen_random(n, m, rng(), trial % 3 == 0 ? RandomMode::Acyclic : RandomMode::Arbitrary);
    SparseEngine eng(n, {.mode = mode, .pivot = pivot, .seed = rng(), .check_passivity = true});
    StaticGraph g(n);
    for (const Arc& a : seq.arcs) {
      const bool closes_cycle = reachable(g, a.head, a.tail);
      const auto before_order = eng.order();
      const auto pos = positions(before_order);
      auto r = eng.add_arc(a.tail, a.head);
      if (closes_cycle) {
        ASSERT_EQ(r.outcome, Outcome::Cycle);
        const Arc wit = *r.witness;
        ASSERT_TRUE(g.n > 0);
        // (v,w) -> ... -> witness -> ... -> v
        EXPECT_TRUE(reachable(g, a.head, wit.tail));
        EXPECT_TRUE(reachable(g, wit.head, a.tail));
        EXPECT_TRUE(std::find(seq.arcs.begin(), seq.arcs.end(), wit) != seq.arcs.end());
        break;
      }
      ASSERT_NE(r.outcome, Outcome::Cycle);
      g.add(a);
      ASSERT_TRUE(eng.order_is_topological());
      if (mode == SearchMode::SoftThreshold) {
        EXPECT_LE(eng.last_loop_iterations(), n * n + eng.arc_count() + n);
      }
      for (VertexId x : r.moved) {
        EXPECT_GE(pos[x], pos[a.head]);
        EXPECT_LE(pos[x], pos[a.tail]);
      }
    }
    if (mode == SearchMode::SoftThreshold) {
      const double mm = static_cast<double>(eng.arc_count());
      EXPECT_LE(static_cast<double>(eng.metrics().arc_traversals), 4 * mm * std::sqrt(mm) + mm + 1);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, SparseRandomRuns,
                         ::testing::Values(RandomRunCase{SearchMode::Limited, PivotRule::Median},
                                           RandomRunCase{SearchMode::SoftThreshold, PivotRule::Median},
                                           RandomRunCase{SearchMode::SoftThreshold, PivotRule::Random}),
                         [](const auto& info) {
                           if (info.param.mode == SearchMode::Limited) return std::string("Limited");
                           return std::string(info.param.pivot == PivotRule::Median ? "SoftMedian" : "SoftRandom");
                         });

TEST(SparseEngine, PartitionSidesOfPivot) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 25;
    auto seq = gen_random(n, rng() % (n * (n - 1) / 2 + 1), rng(), RandomMode::Acyclic);
    SparseConfig cfg;
    cfg.trace = true;
    SparseEngine eng(n, cfg);
    for (const Arc& a : seq.arcs) {
      const auto pos = positions(eng.order());
      auto r = eng.add_arc(a.tail, a.head);
      if (r.outcome != Outcome::Reordered) continue;
      const auto& tr = eng.last_trace();
      for (VertexId x : tr.f_less) EXPECT_LT(pos[x], pos[tr.pivot]);
      for (VertexId y : tr.b_greater) EXPECT_GT(pos[y], pos[tr.pivot]);
      if (tr.pivot == a.tail) {
        EXPECT_TRUE(tr.b_greater.empty());
      }
    }
  }
}

TEST(SparseEngine, AddVertexExtendsOrder) {
  SparseEngine eng(2);
  const VertexId x = eng.add_vertex();
  EXPECT_EQ(x, 2u);
  eng.add_arc(2, 0);
  EXPECT_TRUE(eng.before(2, 0));
  EXPECT_TRUE(eng.order_is_topological());
}
