#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "catoni/errors.hpp"
#include "catoni/influence.hpp"

namespace catoni {
namespace {

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

TEST(Influence, PointValues) {
  EXPECT_EQ(eval_influence(InfluenceKind::widest, 0.0), 0.0);
  EXPECT_EQ(eval_influence(InfluenceKind::narrowest, 0.0), 0.0);
  EXPECT_EQ(eval_influence(InfluenceKind::identity, 0.0), 0.0);
  EXPECT_NEAR(eval_influence(InfluenceKind::narrowest, 1.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(eval_influence(InfluenceKind::widest, 1.0), std::log(2.5), 1e-15);
  EXPECT_NEAR(eval_influence(InfluenceKind::narrowest, 7.0), std::log(2.0), 1e-15);
  EXPECT_EQ(eval_influence(InfluenceKind::identity, -3.5), -3.5);
}

TEST(Influence, RejectsNonFinite) {
  EXPECT_THROW(eval_influence(InfluenceKind::widest, std::numeric_limits<double>::infinity()),
               InputError);
  EXPECT_THROW(eval_influence(InfluenceKind::narrowest, std::nan("")), InputError);
}

TEST(Envelopes, Values) {
  const auto zero = envelopes(0.0);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_EQ(zero.upper, 0.0);
  const auto one = envelopes(1.0);
  EXPECT_NEAR(one.lower, std::log(2.0), 1e-15);
  EXPECT_NEAR(one.upper, std::log(2.5), 1e-15);
  const auto minus_one = envelopes(-1.0);
  EXPECT_NEAR(minus_one.lower, -std::log(2.5), 1e-15);
  EXPECT_NEAR(minus_one.upper, -std::log(2.0), 1e-15);
}

TEST(Envelopes, FiniteForExtremeArguments) {
  for (double x : {1e-300, 1e10, 1e200, -1e200, 1e308}) {
    const auto e = envelopes(x);
    EXPECT_TRUE(std::isfinite(e.lower)) << x;
    EXPECT_TRUE(std::isfinite(e.upper)) << x;
    EXPECT_LE(e.lower, e.upper) << x;
  }
}

TEST(Envelopes, LogArgumentsStayAboveHalf) {
  for (double x : uniform_grid(-50.0, 50.0, 100001)) {
    ASSERT_GE(1.0 + x + 0.5 * x * x, 0.5);
    ASSERT_GE(1.0 - x + 0.5 * x * x, 0.5);
  }
}

TEST(ValidateInfluence, RobustKindsPass) {
  const auto grid = uniform_grid(-50.0, 50.0, 100000);
  for (auto kind : {InfluenceKind::widest, InfluenceKind::narrowest}) {
    const auto report = validate_influence(kind, grid);
    EXPECT_TRUE(report.sandwich) << to_string(kind);
    EXPECT_TRUE(report.monotone) << to_string(kind);
    EXPECT_EQ(report.points, grid.size());
  }
}

TEST(ValidateInfluence, IdentityFailsSandwich) {
  const auto report = validate_influence(InfluenceKind::identity, uniform_grid(-50.0, 50.0, 100000));
  EXPECT_FALSE(report.sandwich);
  EXPECT_TRUE(report.monotone);
  EXPECT_GT(report.sandwich_violations, 0u);
  // At x = 50 the upper envelope is log(1 + 50 + 1250), about 7.17.
  const auto at50 = validate_influence(InfluenceKind::identity, std::vector<double>{50.0});
  EXPECT_FALSE(at50.sandwich);
  EXPECT_NEAR(at50.worst_sandwich_excess, 50.0 - std::log(1301.0), 1e-12);
}

TEST(ValidateInfluence, EmptyGridIsAnError) {
  EXPECT_THROW(validate_influence(InfluenceKind::widest, std::vector<double>{}), InputError);
}

TEST(ValidateInfluence, DetectsNonMonotoneGridOrder) {
  // A descending grid makes phi decrease between consecutive points.
  const auto report = validate_influence(InfluenceKind::widest, std::vector<double>{1.0, 0.0});
  EXPECT_FALSE(report.monotone);
}

TEST(Influence, Oddness) {
  for (auto kind : {InfluenceKind::widest, InfluenceKind::narrowest}) {
    for (double x : uniform_grid(0.0, 50.0, 20001))
      ASSERT_NEAR(eval_influence(kind, -x), -eval_influence(kind, x), 1e-12) << x;
  }
}

TEST(Influence, NarrowestIsBounded) {
  for (double x : uniform_grid(-1e6, 1e6, 200001))
    ASSERT_LE(std::fabs(eval_influence(InfluenceKind::narrowest, x)), std::log(2.0) + 1e-15);
}

TEST(Influence, NarrowestSmoothAtSaturation) {
  // One-sided difference quotients at x = +-1 both tend to 0.
  const double h = 1e-6;
  for (double x : {1.0, -1.0}) {
    const double left = (eval_influence(InfluenceKind::narrowest, x) -
                         eval_influence(InfluenceKind::narrowest, x - h)) / h;
    const double right = (eval_influence(InfluenceKind::narrowest, x + h) -
                          eval_influence(InfluenceKind::narrowest, x)) / h;
    EXPECT_NEAR(left, 0.0, 1e-5);
    EXPECT_NEAR(right, 0.0, 1e-5);
  }
}

TEST(Influence, UnitSlopeAtOrigin) {
  const double h = 1e-7;
  for (auto kind : {InfluenceKind::widest, InfluenceKind::narrowest}) {
    const double slope = (eval_influence(kind, h) - eval_influence(kind, -h)) / (2 * h);
    EXPECT_NEAR(slope, 1.0, 1e-6) << to_string(kind);
  }
}

TEST(Influence, NameRoundTrip) {
  for (auto kind : {InfluenceKind::identity, InfluenceKind::narrowest, InfluenceKind::widest})
    EXPECT_EQ(influence_from_string(to_string(kind)), kind);
  EXPECT_THROW(influence_from_string("huber"), InputError);
}

}  // namespace
}  // namespace catoni
