#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"
#include "xcover/gen.hpp"
#include "xcover/oracle.hpp"

using namespace xcover;
using namespace xcover::testing;

namespace {

GraphInput graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

}  // namespace

TEST(Gen, ParseGraph) {
  const GraphInput g = graph("3 2\n0 1\n1 2\n");
  EXPECT_EQ(g.num_vertices, 3u);
  EXPECT_EQ(g.edges.size(), 2u);
  EXPECT_THROW(graph("3 1\n1 1\n"), ParseError);
  EXPECT_THROW(graph("3 2\n0 1\n1 0\n"), ParseError);
  EXPECT_THROW(graph("3 1\n0 5\n"), ParseError);
  EXPECT_THROW(graph("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(graph(""), ParseError);
}

TEST(Gen, TriangleAllElements) {
  GenConfig cfg;
  cfg.element_fraction = 1.0;
  const Instance i = generate(graph("3 3\n0 1\n1 2\n0 2\n"), cfg);
  ASSERT_EQ(i.num_columns(), 3u);
  ASSERT_EQ(i.num_rows(), 1u);  // one cycle, both orientations merged
  EXPECT_EQ(i.row(0).columns, (std::vector<ColumnId>{0, 1, 2}));
  EXPECT_EQ(count_covers(i), 1);
}

TEST(Gen, SquareWithChord) {
  // Cycles through 0: 0-1-2-0, 0-2-3-0, 0-1-2-3-0.
  GenConfig cfg;
  cfg.element_fraction = 1.0;
  const Instance i = generate(graph("4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n"), cfg);
  EXPECT_EQ(i.num_rows(), 3u);
  EXPECT_EQ(count_covers(i), 1);
  cfg.max_cycle_length = 3;
  EXPECT_EQ(generate(graph("4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n"), cfg).num_rows(), 2u);
  cfg.max_cycle_length = 12;
  cfg.max_cycles = 1;
  EXPECT_EQ(generate(graph("4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n"), cfg).num_rows(), 1u);
}

TEST(Gen, EdgelessGraph) {
  const Instance i = generate(graph("4 0\n"), GenConfig{});
  EXPECT_EQ(i.num_rows(), 0u);
  EXPECT_EQ(i.num_columns(), 4u);  // ceil(0.3) per singleton component
  EXPECT_EQ(count_covers(i), 0);
}

TEST(Gen, DeterministicUnderSeed) {
  const GraphInput g = graph("8 11\n0 1\n1 2\n2 3\n3 0\n0 2\n4 5\n5 6\n6 7\n7 4\n4 6\n1 3\n");
  GenConfig cfg;
  cfg.seed = 42;
  const Instance a = generate(g, cfg);
  const Instance b = generate(g, cfg);
  EXPECT_EQ(serialize_instance(a, Format::xc), serialize_instance(b, Format::xc));
  EXPECT_EQ(a.num_columns(), 4u);  // ceil(0.3 * 4) per component
}

TEST(Gen, RejectsBadFraction) {
  GenConfig cfg;
  cfg.element_fraction = 0;
  EXPECT_THROW(generate(graph("1 0\n"), cfg), std::invalid_argument);
}

TEST(Gen, BlockDiagonal) {
  const Instance base = running_example();
  const Instance one = block_diagonal(base, 1);
  EXPECT_EQ(one.num_rows(), base.num_rows());
  for (RowId r = 0; r < base.num_rows(); ++r) EXPECT_EQ(one.row(r).columns, base.row(r).columns);
  EXPECT_EQ(count_covers(block_diagonal(base, 2)), 16);
  EXPECT_EQ(count_covers(block_diagonal(base, 3)), 64);
  EXPECT_EQ(block_diagonal(base, 2).row(6).name, "A.2");
  EXPECT_THROW(block_diagonal(base, 0), std::invalid_argument);
}
