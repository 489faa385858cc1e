#include <gtest/gtest.h>

#include "diffusion/engine.hpp"

using namespace diffusion;

TEST(PlanText, RoundTrip) {
  TransferPlan p(4);
  p.transfer(1, 3);
  p.transfer(4, 2);
  EXPECT_EQ(format_plan(p), "1>3 4>2");
  EXPECT_EQ(parse_plan(4, "1>3 4>2"), p);
  EXPECT_EQ(parse_plan(4, "."), TransferPlan(4));
  EXPECT_EQ(format_plan(TransferPlan(3)), ".");
}

TEST(PlanText, OutOfRangeKeptForValidation) {
  const TransferPlan p = parse_plan(3, "1>5");
  const auto v = validate_plan(ChipState({3, 2, 1}), p);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, PlanViolation::Kind::VertexOutOfRange);
  const auto self = validate_plan(ChipState({3, 2, 1}), parse_plan(3, "2>2"));
  ASSERT_FALSE(self.empty());
  EXPECT_EQ(self[0].kind, PlanViolation::Kind::SelfTransfer);
}

TEST(PlanText, FileFormat) {
  const auto plans = parse_plans(3, "# steps\n1>2\n\n.\n2>3 1>3\n");
  ASSERT_EQ(plans.size(), 3u);
  EXPECT_TRUE(plans[1].empty());
  EXPECT_EQ(plans[2].get(3, 1), -1);
  try {
    parse_plans(3, "1>2\n1-2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}
