#include "ronm/sequences.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ronm;

TEST(GrowthRecursion, FloorHoldsAcrossGrid) {
  for (double a : {0.1, 1.0, 10.0})
    for (double b : {1.0, 1.25, 1.5, 2.0}) {
      double x1 = std::pow(a, 2.0 / b);
      while (std::pow(x1, b / 2.0) < a) x1 = std::nextafter(x1, INFINITY);
      const SequenceCheck c = growth_recursion_check(a, b, x1, 100000);
      EXPECT_TRUE(c.pass) << "a=" << a << " b=" << b << " first violation " << c.first_violation;
      EXPECT_GE(c.worst_ratio, 1.0);
      EXPECT_EQ(c.length, 100000);
    }
}

// Oracle: b = 2 makes the recursion x_{n+1} = x_n + a, so x_n = x_1 + (n-1) a.
TEST(GrowthRecursion, LinearCaseByHand) {
  const SequenceCheck c = growth_recursion_check(2.0, 2.0, 2.0, 10);
  // x_n = 2n against the floor 2n/8: ratio 8 everywhere
  EXPECT_NEAR(c.worst_ratio, 8.0, 1e-12);
}

TEST(GrowthRecursion, Preconditions) {
  EXPECT_THROW(growth_recursion_check(1.0, 0.5, 1.0, 10), PreconditionError);
  EXPECT_THROW(growth_recursion_check(1.0, 1.5, 0.5, 10), PreconditionError);
  EXPECT_THROW(growth_recursion_check(0.0, 1.5, 1.0, 10), PreconditionError);
}

TEST(InductionBound, ExtremalAndRandomSequences) {
  for (double a : {0.5, 1.0, 3.0})
    for (double b : {0.5, 1.0, 4.0})
      for (double c : {0.5, 1.0, 2.0}) {
        EXPECT_TRUE(induction_bound_check(a, b, c, 20000, 1.0, 1).pass);
        EXPECT_TRUE(induction_bound_check(a, b, c, 20000, 0.1, 7).pass);
      }
}

TEST(InductionBound, TightWhenCIsTwo) {
  // a = 1, b = 1, c = 2: x_1 = 1 and x_n = n exactly, sitting on the ceiling h n = n
  const SequenceCheck s = induction_bound_check(1.0, 1.0, 2.0, 1000, 1.0, 1);
  EXPECT_TRUE(s.pass);
  EXPECT_NEAR(s.worst_ratio, 1.0, 1e-12);
}

TEST(InductionBound, Preconditions) {
  EXPECT_THROW(induction_bound_check(1.0, 1.0, 3.0, 10, 1.0, 1), PreconditionError);
  EXPECT_THROW(induction_bound_check(1.0, 1.0, 1.0, 10, 0.0, 1), PreconditionError);
}
