#include <gtest/gtest.h>

#include <cmath>

#include "devratio/function.hpp"
#include "helpers.hpp"

using namespace devratio;

TEST(ScalarFn, PolynomialEvaluationAndIntegral) {
  const ScalarFn f = ScalarFn::polynomial({1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(f(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f(2.0), 1.0 + 4.0 + 12.0);
  EXPECT_NEAR(f.integral(2.0), 2.0 + 4.0 + 8.0, 1e-12);
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_TRUE(ScalarFn::zero().is_zero());
  EXPECT_TRUE(ScalarFn::polynomial({0.0, 0.0}).is_zero());
}

TEST(ScalarFn, RampIsFlatThenLinearAndUnbounded) {
  const ScalarFn r = ScalarFn::ramp(1.0, 3.0, 4.0);
  EXPECT_DOUBLE_EQ(r(0.0), 0.0);
  EXPECT_DOUBLE_EQ(r(1.0), 0.0);
  EXPECT_DOUBLE_EQ(r(2.0), 2.0);
  EXPECT_DOUBLE_EQ(r(3.0), 4.0);
  EXPECT_DOUBLE_EQ(r(5.0), 8.0);
  // Integral of 2 max(0, x - 1) from 0 to 3 is (2^2).
  EXPECT_NEAR(r.integral(3.0), 4.0, 1e-12);
}

TEST(ScalarFn, CappedRampStaysAtHeight) {
  const ScalarFn r = ScalarFn::capped_ramp(1.0, 1.01, 5.0);
  EXPECT_DOUBLE_EQ(r(1.0), 0.0);
  EXPECT_NEAR(r(1.005), 2.5, 1e-12);
  EXPECT_DOUBLE_EQ(r(7.0), 5.0);
}

TEST(ScalarFn, ScaledMultipliesValues) {
  const ScalarFn r = ScalarFn::ramp(0.5, 1.0, 1.0).scaled(3.0);
  EXPECT_DOUBLE_EQ(r(1.0), 3.0);
  EXPECT_DOUBLE_EQ(ScalarFn::polynomial({1.0, 1.0}).scaled(2.0)(1.0), 4.0);
}

TEST(ScalarFn, SampleGridContainsBreakpoints) {
  const ScalarFn r = ScalarFn::ramp(0.3, 0.71, 1.0);
  const auto g = r.sample_grid(1.0);
  EXPECT_NE(std::find(g.begin(), g.end(), 0.71), g.end());
  EXPECT_NE(std::find(g.begin(), g.end(), 0.3), g.end());
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_GE(g.size(), 65u);
}

TEST(ScalarFn, RejectsJumps) {
  EXPECT_ERROR_CODE(ScalarFn::piecewise_linear({{1.0, 0.0}, {1.0, 2.0}}), InvalidInput);
  EXPECT_ERROR_CODE(ScalarFn::piecewise_linear({}), InvalidInput);
  EXPECT_ERROR_CODE(ScalarFn::polynomial({NAN}), InvalidInput);
}

TEST(LatencyFn, ValidatesSignAndMonotonicity) {
  EXPECT_ERROR_CODE(LatencyFn::polynomial({1.0, -1.0}), InvalidInput);
  EXPECT_ERROR_CODE(LatencyFn(ScalarFn::piecewise_linear({{0.0, 2.0}, {1.0, 1.0}})), InvalidInput);
  EXPECT_ERROR_CODE(LatencyFn(ScalarFn::piecewise_linear({{0.0, -1.0}, {1.0, 1.0}})), InvalidInput);
  EXPECT_NO_THROW(LatencyFn(ScalarFn::ramp(0.5, 1.0, 2.0)));
}

TEST(LatencyFn, MonotoneOnGrid) {
  const LatencyFn fns[] = {LatencyFn::polynomial({0.2, 1.0, 3.0}), LatencyFn(ScalarFn::capped_ramp(1.0, 2.0, 3.0)),
                           LatencyFn::constant(2.0)};
  for (const auto& f : fns) {
    const auto g = f.fn().sample_grid(5.0);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LE(f(g[i - 1]), f(g[i]) + 1e-12);
  }
}

TEST(ScalarFn, DescribeIsReadable) {
  EXPECT_EQ(ScalarFn::polynomial({1.0, 2.0}).describe().empty(), false);
  EXPECT_NE(ScalarFn::ramp(0.0, 1.0, 1.0).describe().find("pwl"), std::string::npos);
}
