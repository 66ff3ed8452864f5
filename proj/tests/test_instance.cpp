#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "xcover/instance.hpp"

using namespace xcover;
using namespace xcover::testing;

TEST(Instance, MatrixRunningExampleParses) {
  const Instance m = parse_instance(kRunningMatrix, Format::matrix);
  ASSERT_EQ(m.num_rows(), 6u);
  ASSERT_EQ(m.num_columns(), 6u);
  EXPECT_EQ(m.row(0).name, "R1");
  EXPECT_EQ(m.columns().front(), "C1");
  EXPECT_EQ(m.row(0).columns, (std::vector<ColumnId>{0, 1, 2, 3}));
  // Same incidence as the named xc version.
  const Instance x = running_example();
  for (RowId r = 0; r < 6; ++r) EXPECT_EQ(m.row(r).columns, x.row(r).columns);
  EXPECT_EQ(x.row(A).name, "A");
}

TEST(Instance, MinimalXc) {
  const Instance i = parse_instance("1\nA: 1\n", Format::xc);
  EXPECT_EQ(i.num_columns(), 1u);
  EXPECT_EQ(i.num_rows(), 1u);
}

TEST(Instance, UnknownColumnIsParseErrorWithLine) {
  try {
    parse_instance("1 2\nA: 1\nB: 9\n", Format::xc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Instance, Rejections) {
  EXPECT_THROW(parse_instance("", Format::xc), ParseError);
  EXPECT_THROW(parse_instance("", Format::matrix), ParseError);
  EXPECT_THROW(parse_instance("1 1\nA: 1\n", Format::xc), ParseError);         // duplicate column
  EXPECT_THROW(parse_instance("1\nA: 1\nA: 1\n", Format::xc), ParseError);     // duplicate row
  EXPECT_THROW(parse_instance("1 2\nA:\n", Format::xc), ParseError);           // empty row
  EXPECT_THROW(parse_instance("1 2\n0 0\n", Format::matrix), ParseError);      // empty row
  EXPECT_THROW(parse_instance("1 2\n1 2\n", Format::matrix), ParseError);      // bad entry
  EXPECT_THROW(parse_instance("2 2\n1 0\n", Format::matrix), ParseError);      // short
  EXPECT_THROW(Instance({}, {}), StructuralError);
  EXPECT_THROW(Instance({"a"}, {Row{"r", {1}}}), StructuralError);
}

TEST(Instance, CommentsAndDuplicateColumnsInRow) {
  const Instance i = parse_instance("# header\na b\n\n# row\nX: b a b\n", Format::xc);
  EXPECT_EQ(i.row(0).columns, (std::vector<ColumnId>{0, 1}));
}

TEST(Instance, RowlessColumnAllowed) {
  const Instance i = parse_instance("a b\nX: a\n", Format::xc);
  EXPECT_EQ(i.column_rows()[1].size(), 0u);
}

TEST(Instance, RunningExampleRoundTripsInBothFormats) {
  const Instance x = running_example();
  for (Format f : {Format::xc, Format::matrix}) EXPECT_EQ(parse_instance(serialize_instance(x, f), f), x);
  const Instance m = parse_instance(kRunningMatrix, Format::matrix);
  EXPECT_EQ(serialize_instance(m, Format::matrix), kRunningMatrix);
}

TEST(Instance, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Instance i = random_small_instance(rng);
    for (Format f : {Format::xc, Format::matrix}) ASSERT_EQ(parse_instance(serialize_instance(i, f), f), i);
  }
}

TEST(Instance, ColumnRowsAgreeWithRows) {
  std::mt19937_64 rng(3);
  const Instance i = random_small_instance(rng);
  const auto cr = i.column_rows();
  for (ColumnId c = 0; c < i.num_columns(); ++c)
    for (RowId r = 0; r < i.num_rows(); ++r) {
      const auto& cols = i.row(r).columns;
      const bool in_row = std::binary_search(cols.begin(), cols.end(), c);
      const bool in_col = std::binary_search(cr[c].begin(), cr[c].end(), r);
      EXPECT_EQ(in_row, in_col);
    }
}

TEST(Instance, FormatFromPath) {
  EXPECT_EQ(format_for_path("a/b.matrix"), Format::matrix);
  EXPECT_EQ(format_for_path("x.mat"), Format::matrix);
  EXPECT_EQ(format_for_path("x.xc"), Format::xc);
  EXPECT_THROW(load_instance("/nonexistent/file.xc"), std::exception);
}
