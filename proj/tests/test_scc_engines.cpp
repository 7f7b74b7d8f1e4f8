#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "itopo/disjoint_sets.hpp"
#include "itopo/generators.hpp"
#include "itopo/new_component.hpp"
#include "itopo/oracle.hpp"
#include "itopo/scc_dense.hpp"
#include "itopo/scc_sparse.hpp"
#include "itopo/sparse_engine.hpp"

using namespace itopo;

TEST(DisjointSets, FreshAndUnite) {
  DisjointSets ds(8);
  for (VertexId v = 0; v < 8; ++v) EXPECT_EQ(ds.find(v), v);
  EXPECT_EQ(ds.unite(2, 5), 2u);
  EXPECT_EQ(ds.find(5), 2u);
  EXPECT_EQ(ds.find(2), 2u);
  EXPECT_THROW(ds.unite(5, 3), UsageError);
  EXPECT_THROW(ds.find(8), std::out_of_range);
}

TEST(DisjointSets, MatchesLabelArrayOracle) {
  const std::size_t n = 10000;
  DisjointSets ds(n);
  std::vector<VertexId> label(n);
  std::iota(label.begin(), label.end(), VertexId{0});
  std::mt19937_64 rng(4);
  for (int op = 0; op < 20000; ++op) {
    const VertexId a = label[rng() % n], b = label[rng() % n];
    if (a == b) continue;
    // Keep the canonical named first; relabel b's members in the oracle.
    ds.unite(a, b);
    for (auto& l : label)
      if (l == b) l = a;
  }
  for (VertexId v = 0; v < n; ++v) ASSERT_EQ(ds.find(v), label[v]);
  for (VertexId v = 0; v < n; ++v) EXPECT_EQ(ds.find(v), ds.find(ds.find(v)));
}

TEST(NewComponent, UnreachableAndChain) {
  // ids: fw=0, a=1, b=2, fv=3
  std::vector<VertexId> X{0, 1, 2, 3};
  EXPECT_TRUE(identify_new_component(X, std::vector<Arc>{{0, 1}, {0, 2}}, 0, 3).empty());
  auto members = identify_new_component(X, std::vector<Arc>{{0, 1}, {1, 3}, {0, 2}}, 0, 3);
  EXPECT_EQ(std::set<VertexId>(members.begin(), members.end()), (std::set<VertexId>{0, 1, 3}));
}

TEST(NewComponent, AgreesWithStaticScc) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + rng() % 12;
    auto dag = gen_random(k, rng() % (k * (k - 1) / 2 + 1), rng(), RandomMode::Acyclic);
    const VertexId fw = rng() % k;
    VertexId fv = rng() % k;
    if (fv == fw) fv = (fw + 1) % k;
    std::vector<VertexId> X(k);
    std::iota(X.begin(), X.end(), VertexId{0});
    auto members = identify_new_component(X, dag.arcs, fw, fv);
    std::vector<Arc> closed = dag.arcs;
    if (std::find(closed.begin(), closed.end(), Arc{fv, fw}) == closed.end()) closed.push_back({fv, fw});
    auto scc = static_scc(StaticGraph(k, closed));
    std::set<VertexId> expect;
    for (VertexId x = 0; x < k; ++x)
      if (scc.component[x] == scc.component[fw]) expect.insert(x);
    if (expect.size() == 1) expect.clear();
    EXPECT_EQ(std::set<VertexId>(members.begin(), members.end()), expect) << "trial " << trial;
  }
}

TEST(SortGroup, RespectsArcs) {
  std::vector<VertexId> group{4, 2, 9};
  sort_group(group, std::vector<Arc>{{9, 4}, {2, 9}, {7, 2}});
  EXPECT_EQ(group, (std::vector<VertexId>{2, 9, 4}));
}

template <class Engine>
class SccBasics : public ::testing::Test {};
using SccEngineTypes = ::testing::Types<SccSparseEngine, SccDenseEngine<BitMatrix>, SccDenseEngine<HashedMatrix>>;
TYPED_TEST_SUITE(SccBasics, SccEngineTypes);

TYPED_TEST(SccBasics, TwoCycleMerges) {
  TypeParam eng(2);
  EXPECT_EQ(eng.add_arc(0, 1).outcome, SccOutcome::NoSearch);
  auto r = eng.add_arc(1, 0);
  ASSERT_EQ(r.outcome, SccOutcome::Merged);
  EXPECT_EQ(std::set<VertexId>(r.absorbed.begin(), r.absorbed.end()), (std::set<VertexId>{0, 1}));
  EXPECT_EQ(eng.find(0), eng.find(1));
  EXPECT_EQ(eng.canonical_order().size(), 1u);
  EXPECT_TRUE(eng.condensation_is_topological());
  EXPECT_THROW(eng.add_arc(1, 0), DuplicateArcError);
}

TYPED_TEST(SccBasics, ForwardArcNoSearch) {
  TypeParam eng(3);
  EXPECT_EQ(eng.add_arc(0, 2).outcome, SccOutcome::NoSearch);
  EXPECT_EQ(eng.components(), (std::vector<VertexId>{0, 1, 2}));
}

TYPED_TEST(SccBasics, AcceptsArcsAfterMerging) {
  TypeParam eng(4);
  eng.add_arc(0, 1);
  eng.add_arc(1, 0);
  EXPECT_EQ(eng.add_arc(3, 0).outcome, SccOutcome::Reordered);
  eng.add_arc(1, 3);
  auto labels = eng.components();
  EXPECT_EQ(labels[0], labels[3]);
  EXPECT_NE(labels[0], labels[2]);
  EXPECT_TRUE(eng.condensation_is_topological());
}

TEST(SccSparse, ThreeCycleCanonicalIsLastTail) {
  SccSparseEngine eng(3);
  eng.add_arc(0, 1);
  eng.add_arc(1, 2);
  auto r = eng.add_arc(2, 0);
  ASSERT_EQ(r.outcome, SccOutcome::Merged);
  EXPECT_EQ(r.canonical, 2u);
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(eng.find(v), 2u);
}

TEST(SccDense, TwoCycleLeavesEmptyOneByOneMatrix) {
  SccDenseEngine<> eng(2);
  eng.add_arc(0, 1);
  auto r = eng.add_arc(1, 0);
  ASSERT_EQ(r.outcome, SccOutcome::Merged);
  EXPECT_EQ(eng.component_count(), 1u);
  EXPECT_EQ(eng.matrix().count(), 0u);
  // The meeting position holds f(w) = 0 after the reorder.
  EXPECT_EQ(r.canonical, 0u);
}

TEST(SccSparse, SingletonSearchMatchesTopologicalEngine) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    auto seq = gen_random(n, rng() % (n * (n - 1) / 2 + 1), rng(), RandomMode::Acyclic);
    SparseEngine topo(n, {.trace = true});
    SccSparseEngine scc(n, {.trace = true});
    for (const Arc& a : seq.arcs) {
      topo.add_arc(a.tail, a.head);
      ASSERT_NE(scc.add_arc(a.tail, a.head).outcome, SccOutcome::Merged);
      ASSERT_EQ(topo.last_trace().steps, scc.last_trace().steps);
      ASSERT_EQ(topo.last_trace().thresholds, scc.last_trace().thresholds);
      ASSERT_EQ(topo.order(), scc.canonical_order());
    }
    EXPECT_EQ(topo.metrics().arc_traversals, scc.metrics().arc_traversals);
  }
}

struct SccCase {
  PivotRule pivot;
};

class SccRandomRuns : public ::testing::TestWithParam<PivotRule> {};

TEST_P(SccRandomRuns, PartitionsMatchOracleAndEachOther) {
  std::mt19937_64 rng(GetParam() == PivotRule::Median ? 1 : 2);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 39;
    const std::size_t m = rng() % (std::min<std::size_t>(n * (n - 1) / 2, 4 * n) + 1);
    auto seq = gen_random(n, m, rng(), RandomMode::Arbitrary);
    SccSparseEngine sparse(n, {.pivot = GetParam(), .seed = rng(), .check_passivity = true});
    SccDenseEngine<> dense(n);
    std::vector<Arc> so_far;
    for (const Arc& a : seq.arcs) {
      so_far.push_back(a);
      sparse.add_arc(a.tail, a.head);
      dense.add_arc(a.tail, a.head);
      const auto oracle = static_scc(StaticGraph(n, so_far));
      ASSERT_TRUE(same_partition(sparse.components(), oracle.component));
      ASSERT_TRUE(same_partition(dense.components(), oracle.component));
      ASSERT_TRUE(sparse.condensation_is_topological());
      ASSERT_TRUE(dense.condensation_is_topological());
      ASSERT_TRUE(sparse.last_trace().b_greater_exhausted);
    }
    const double mm = static_cast<double>(so_far.size());
    EXPECT_LE(static_cast<double>(sparse.metrics().arc_traversals), 4 * mm * std::sqrt(mm) + 2 * mm + 1);
    EXPECT_LE(sparse.loop_deletions(), 2 * so_far.size());
  }
}

INSTANTIATE_TEST_SUITE_P(Pivots, SccRandomRuns, ::testing::Values(PivotRule::Median, PivotRule::Random),
                         [](const auto& info) { return std::string(info.param == PivotRule::Median ? "Median" : "Random"); });
