#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "xcover/gen.hpp"
#include "xcover/oracle.hpp"
#include "xcover/solver.hpp"

using namespace xcover;
using namespace xcover::testing;

namespace {

SolveConfig config(Engine e, unsigned threads = 1) {
  SolveConfig c;
  c.engine = e;
  c.threads = threads;
  return c;
}

}  // namespace

TEST(Solver, EmptyMatrixIsTop) {
  Compiler c(config(Engine::dxz));
  std::vector<MatrixRow> none;
  DlxMatrix m(4, none);
  EXPECT_EQ(c.dxz(m), kTop);
  EXPECT_EQ(c.dxd(m), kTop);
}

TEST(Solver, RunningExampleZbdd) {
  Compiler c(config(Engine::dxz));
  DlxMatrix m(running_example());
  const DlxSnapshot before = m.snapshot();
  const NodeId root = c.dxz(m);
  EXPECT_EQ(m.snapshot(), before);
  EXPECT_EQ(c.store().count(root), 4);
  EXPECT_EQ(c.store().enumerate(root), running_covers());
  // The {5,6} subproblem is built once and then reused.
  EXPECT_EQ(c.cache_hits(), 1u);
  EXPECT_EQ(c.store().node_count(root), 7u);
  for (NodeId n = root;; ) {
    ASSERT_NE(c.store().kind(n), NodeKind::decomposable);
    if (c.store().kind(n) != NodeKind::decision) break;
    n = c.store().node(n).neg;
  }
}

TEST(Solver, RunningExampleDecomposes) {
  Compiler c(config(Engine::dxd));
  DlxMatrix m(running_example());
  const NodeId root = c.dxd(m);
  const NodeStore& s = c.store();
  ASSERT_EQ(s.kind(root), NodeKind::decomposable);
  const auto& kids = s.node(root).children;
  ASSERT_EQ(kids.size(), 2u);
  std::vector<std::vector<RowId>> vars{s.variables(kids[0]), s.variables(kids[1])};
  std::sort(vars.begin(), vars.end());
  EXPECT_EQ(vars, (std::vector<std::vector<RowId>>{{A, B, C}, {D, E, F}}));
  EXPECT_EQ(s.count(kids[0]), 2);
  EXPECT_EQ(s.count(kids[1]), 2);
  EXPECT_EQ(c.subs(), 2u);
  EXPECT_EQ(s.enumerate(root), running_covers());
}

TEST(Solver, DynamicMatchesBfsNodeForNode) {
  auto store = std::make_shared<NodeStore>();
  Compiler bfs(config(Engine::dxd), store);
  Compiler dyn(config(Engine::dyndxd), store);
  DlxMatrix m(running_example());
  const NodeId a = bfs.dxd(m);
  ComponentSet cc = make_component_set(m);
  const auto before = cc.partition();
  const NodeId b = dyn.dyndxd(m, cc);
  EXPECT_EQ(a, b);
  EXPECT_EQ(cc.partition(), before);
}

TEST(Solver, BfsComponentsOfRunningExample) {
  DlxMatrix m(running_example());
  EXPECT_EQ(bfs_components(m), (std::vector<std::vector<RowId>>{{A, B, C}, {D, E, F}}));
  const Instance one = parse_instance("a\nX: a\n", Format::xc);
  DlxMatrix s(one);
  EXPECT_EQ(bfs_components(s), (std::vector<std::vector<RowId>>{{0}}));
}

TEST(Solver, BfsComponentsMatchUnionFind) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = random_instance(rng, 1 + rng() % 20, 1 + rng() % 20, 0.1);
    DlxMatrix m(inst);
    std::vector<Vertex> rows(inst.num_rows());
    std::iota(rows.begin(), rows.end(), 0);
    ASSERT_EQ(bfs_components(m), union_find_partition(rows, instance_edges(inst)));
    ASSERT_EQ(primal_edges(m), instance_edges(inst));
  }
}

TEST(Solver, DecomposeRunningExample) {
  DlxMatrix m(running_example());
  auto parts = decompose_matrix(m, {{A, B, C}, {D, E, F}});
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].live_column_ids(), (std::vector<ColumnId>{0, 1, 2, 3}));
  EXPECT_EQ(parts[1].live_column_ids(), (std::vector<ColumnId>{4, 5}));
  EXPECT_EQ(parts[1].live_rows(), (std::vector<RowId>{D, E, F}));
  EXPECT_THROW(decompose_matrix(m, {{A, B}, {D, E, F}}), StructuralError);
  EXPECT_THROW(decompose_matrix(m, {{A, B, C}, {C, D, E, F}}), StructuralError);

  const Instance two = parse_instance("a b\nX: a\nY: b\n", Format::xc);
  DlxMatrix t(two);
  auto singles = decompose_matrix(t, bfs_components(t));
  ASSERT_EQ(singles.size(), 2u);
  EXPECT_EQ(singles[0].num_headers(), 1u);
  EXPECT_EQ(singles[1].num_cells(), 1u);
}

TEST(Solver, DecomposedIncidenceEqualsLive) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const Instance inst = random_block_instance(rng, 3, 4, 4, 0.4);
    DlxMatrix m(inst);
    auto parts = decompose_matrix(m, bfs_components(m));
    std::vector<MatrixRow> joined;
    for (auto& p : parts)
      for (auto& r : p.live_matrix_rows()) joined.push_back(r);
    std::sort(joined.begin(), joined.end(), [](const MatrixRow& a, const MatrixRow& b) { return a.id < b.id; });
    const auto live = m.live_matrix_rows();
    ASSERT_EQ(joined.size(), live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
      ASSERT_EQ(joined[i].id, live[i].id);
      ASSERT_EQ(joined[i].columns, live[i].columns);
    }
  }
}

TEST(Solver, RowlessColumnGivesZero) {
  const Instance i = parse_instance("a b c\nX: a\nY: c\n", Format::xc);
  for (Engine e : {Engine::dxz, Engine::dxd, Engine::dyndxd, Engine::oracle})
    EXPECT_EQ(solve(i, config(e)).count, 0) << engine_name(e);
}

TEST(Solver, EnginesAgreeWithOracle) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = random_small_instance(rng);
    const auto expect = enumerate_covers(inst);
    for (Engine e : {Engine::dxz, Engine::dxd, Engine::dyndxd}) {
      Compiler c(config(e));
      DlxMatrix m(inst);
      const DlxSnapshot before = m.snapshot();
      const NodeId root = c.run(m);
      ASSERT_EQ(m.snapshot(), before);
      ASSERT_EQ(c.store().count(root), expect.size()) << engine_name(e) << " trial " << t;
      ASSERT_EQ(c.store().enumerate(root), expect);
      ASSERT_EQ(as_sorted(expand(c.store(), root)), expect);
      ASSERT_TRUE(c.store().check_canonical().empty());
    }
  }
}

TEST(Solver, CacheSoundness) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = random_small_instance(rng);
    for (Engine e : {Engine::dxz, Engine::dxd, Engine::dyndxd}) {
      SolveConfig on = config(e), off = config(e);
      off.use_cache = false;
      const auto a = solve(inst, on);
      const auto b = solve(inst, off);
      ASSERT_EQ(a.count, b.count);
      ASSERT_EQ(a.store->enumerate(*a.root), b.store->enumerate(*b.root));
      EXPECT_EQ(b.cache_hits, 0u);
    }
  }
}

TEST(Solver, ProductLaw) {
  const Instance base = running_example();
  for (std::size_t k : {2u, 3u}) {
    const Instance inst = block_diagonal(base, k);
    BigCount expect = 1;
    for (std::size_t i = 0; i < k; ++i) expect *= 4;
    for (Engine e : {Engine::dxz, Engine::dxd, Engine::dyndxd}) {
      const auto r = solve(inst, config(e));
      EXPECT_EQ(r.count, expect);
      if (e != Engine::dxz) {
        EXPECT_GE(r.subs, k);
        EXPECT_EQ(r.store->kind(*r.root), NodeKind::decomposable);
      }
    }
  }
}

TEST(Solver, LargeBlockDiagonal) {
  std::mt19937_64 rng(77);
  const Instance block = random_instance(rng, 20, 8, 0.25);
  const BigCount per = count_covers(block);
  const Instance inst = block_diagonal(block, 25);
  BigCount expect = 1;
  for (int i = 0; i < 25; ++i) expect *= per;
  const auto r = solve(inst, config(Engine::dyndxd));
  EXPECT_EQ(r.count, expect);
  if (per > 0) EXPECT_GT(r.subs, 1u);
}

TEST(Solver, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const Instance inst = random_block_instance(rng, 4, 10, 6, 0.3);
    std::vector<std::vector<RowId>> first;
    BigCount count = -1;
    for (Engine e : {Engine::dxd, Engine::dyndxd})
      for (unsigned threads : {1u, 2u, 4u, 8u}) {
        SolveConfig cfg = config(e, threads);
        cfg.spawn_threshold = 1;
        const auto r = solve(inst, cfg);
        const auto covers = r.store->enumerate(*r.root);
        if (count == -1) {
          count = r.count;
          first = covers;
        }
        ASSERT_EQ(r.count, count);
        ASSERT_EQ(covers, first);
      }
  }
}

TEST(Solver, TimeoutIsReported) {
  std::mt19937_64 rng(1);
  const Instance inst = random_instance(rng, 60, 30, 0.1);
  SolveConfig cfg = config(Engine::dxz);
  cfg.timeout = std::chrono::duration<double>(1e-9);
  const auto r = solve(inst, cfg);
  EXPECT_EQ(r.status, SolveReport::Status::timeout);
  EXPECT_FALSE(r.root);
}

TEST(Solver, EngineNames) {
  for (Engine e : {Engine::dxz, Engine::dxd, Engine::dyndxd, Engine::oracle}) EXPECT_EQ(parse_engine(engine_name(e)), e);
  EXPECT_FALSE(parse_engine("d3x"));
  Compiler c(config(Engine::oracle));
  DlxMatrix m(running_example());
  EXPECT_THROW(c.run(m), std::invalid_argument);
  EXPECT_EQ(solve(running_example(), config(Engine::oracle)).count, 4);
}

TEST(Solver, CacheKeyTracksLiveColumns) {
  DlxMatrix m(running_example());
  const CacheKey all = CacheKey::of(m);
  m.cover(0);
  const CacheKey less = CacheKey::of(m);
  EXPECT_FALSE(all == less);
  EXPECT_FALSE(less.test(0));
  EXPECT_TRUE(less.test(4));
  m.uncover(0);
  EXPECT_TRUE(CacheKey::of(m) == all);
  EXPECT_EQ(CacheKey::of(m).hash(), all.hash());
}
