#include <gtest/gtest.h>

#include "dynanet/error.hpp"
#include "dynanet/expression.hpp"

using namespace dynanet;

TEST(Expression, GatingIsStrict) {
  const auto m = parse_expression("gene\t20\t30\t40\ng1\t0.01\t0.04\t0.05\n");
  const auto act = activity(m, "g1");
  EXPECT_EQ(act.active, (std::vector<bool>{true, false, false}));
  EXPECT_EQ(act.n_active, 1u);
}

TEST(Expression, MissingValuesAreInactive) {
  const auto m = parse_expression("gene\t20\t30\t40\ng1\tNA\t\t0.001\n");
  EXPECT_FALSE(m.pvalue(0, 0));
  EXPECT_FALSE(m.pvalue(0, 1));
  EXPECT_EQ(activity(m, "g1").active, (std::vector<bool>{false, false, true}));
}

TEST(Expression, ActiveCountMatchesFlags) {
  const auto m = parse_expression("gene 1 2 3 4 5\ng 0.0 0.039 0.5 0.01 1\n");
  const auto act = activity(m, "g");
  EXPECT_EQ(act.n_active, static_cast<std::size_t>(std::count(act.active.begin(), act.active.end(), true)));
}

TEST(Expression, ThresholdMonotonicity) {
  const auto m = parse_expression("gene 1 2 3 4\ng 0.01 0.03 0.05 0.2\n");
  EXPECT_LE(activity(m, "g", 0.02).n_active, activity(m, "g", 0.04).n_active);
  EXPECT_LE(activity(m, "g", 0.04).n_active, activity(m, "g", 0.3).n_active);
}

TEST(Expression, ColumnsSortedByAgeWithDuplicateLabels) {
  const auto m = parse_expression("gene\t40\t20\t40\ng\t0.5\t0.01\t0.02\n");
  EXPECT_EQ(m.ages(), (std::vector<double>{20, 40, 40}));
  ASSERT_EQ(m.age_labels().size(), 3u);
  EXPECT_EQ(m.age_labels()[0], "20");
  EXPECT_NE(m.age_labels()[1], m.age_labels()[2]);
  EXPECT_EQ(*m.pvalue(0, 0), 0.01);
}

TEST(Expression, OutOfRangeValueRejected) {
  EXPECT_THROW(parse_expression("gene 1 2\ng 0.1 1.5\n"), ValidationError);
  EXPECT_THROW(parse_expression("gene 1 2\ng -0.1 0.5\n"), ValidationError);
}

TEST(Expression, NonNumericValueRejectedWithLine) {
  try {
    parse_expression("gene 1 2\ng1 0.1 0.2\ng2 0.1 abc\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Expression, DuplicateGeneRejected) {
  EXPECT_THROW(parse_expression("gene 1 2\ng 0.1 0.2\ng 0.1 0.2\n"), ValidationError);
}

TEST(Expression, UnknownGeneIsUsageError) {
  const auto m = parse_expression("gene 1 2\ng 0.1 0.2\n");
  EXPECT_THROW(activity(m, "nope"), UsageError);
}
