#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hyperorlicz/expression.hpp"
#include "hyperorlicz/numeric.hpp"

using namespace hyperorlicz;

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s += 1.0;
  s += 1e100;
  s += 1.0;
  s += -1e100;
  EXPECT_EQ(s.value(), 2.0);
}

TEST(LogGrid, EndpointsAndMonotone) {
  const auto g = log_grid(1e-3, 1e3, 7);
  ASSERT_EQ(g.size(), 7u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-3);
  EXPECT_DOUBLE_EQ(g.back(), 1e3);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
}

TEST(MaximizeConcave, FindsInteriorMaximum) {
  // y - y^3 peaks at 1/sqrt(3)
  const auto r = maximize_concave([](double y) { return y - y * y * y; }, {});
  EXPECT_NEAR(r.argmax, 1.0 / std::sqrt(3.0), 1e-7);
  EXPECT_NEAR(r.value, 0.38490017945975051, 1e-14);
  EXPECT_FALSE(r.increasing_at_upper_edge);
}

TEST(MaximizeConcave, FlagsUnboundedObjective) {
  const auto r = maximize_concave([](double y) { return y; }, {});
  EXPECT_TRUE(r.increasing_at_upper_edge);
}

TEST(MinimizeUnimodal, AmemiyaQuadratic) {
  const auto r = minimize_unimodal_positive([](double k) { return (1 + k * k) / k; }, 0.01);
  EXPECT_TRUE(r.attained);
  EXPECT_NEAR(r.value, 2.0, 1e-14);
  EXPECT_NEAR(r.argmin, 1.0, 1e-6);
}

TEST(Expression, ArithmeticAndFunctions) {
  const auto e = Expression::parse("abs(x) + x^2");
  EXPECT_DOUBLE_EQ(e(-3.0), 12.0);
  EXPECT_DOUBLE_EQ(Expression::parse("exp(abs(x)) - 1")(0.0), 0.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2")(0.0), 512.0);  // right-assoc
  EXPECT_DOUBLE_EQ(Expression::parse("-x^2")(3.0), -9.0);
  EXPECT_NEAR(Expression::parse("ln(1+abs(x))")(1.0), 0.69314718055994531, 1e-16);
}

TEST(Expression, RejectsMalformed) {
  for (const char* bad : {"", "x +", "(x", "foo(x)", "x x", "2 ** x", "y"}) {
    EXPECT_THROW(Expression::parse(bad), Error) << bad;
  }
  try {
    Expression::parse("x +");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
}
