#include <gtest/gtest.h>

#include "devratio/cost.hpp"
#include "devratio/generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace devratio;

TEST(EnumeratePaths, SmallGraphs) {
  EXPECT_EQ(enumerate_paths(helpers::pigou(), 0, 10).size(), 2u);
  EXPECT_EQ(enumerate_paths(helpers::parallel({LatencyFn::linear()}), 0, 10).size(), 1u);
  const GeneratedCase b = braess(2, 1.0);
  EXPECT_EQ(b.instance.arc_count(), 5u);
  const auto paths = enumerate_paths(b.instance, 0, 10);
  EXPECT_EQ(paths.size(), 3u);
  const auto& k = b.instance.commodity(0);
  EXPECT_EQ(paths.size(), oracle::simple_paths(b.instance, k.source, k.sink).size());
}

TEST(EnumeratePaths, LexicographicAndCapped) {
  const GeneratedCase b = braess(4, 1.0);
  const auto paths = enumerate_paths(b.instance, 0, 1000);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    EXPECT_LT(path_ids(b.instance, paths[i - 1]), path_ids(b.instance, paths[i]));
  }
  EXPECT_ERROR_CODE(enumerate_paths(b.instance, 0, 2), PathExplosion);
}

TEST(SocialCost, Examples) {
  const Instance one = helpers::parallel({LatencyFn::linear()});
  EXPECT_DOUBLE_EQ(social_cost(one, Flow(one, {{{{0}, 1.0}}})), 1.0);
  for (double beta : {0.5, 1.0, 2.0}) {
    const GeneratedCase c = braess(3, beta);
    EXPECT_NEAR(social_cost(c.instance, c.z), 1.0, 1e-12);
    EXPECT_NEAR(social_cost(c.instance, c.x), 1.0 + 3.0 * beta, 1e-12);
  }
}

TEST(SocialCost, PathAndArcFormsAgree) {
  for (std::size_t m = 2; m <= 5; ++m) {
    const GeneratedCase c = braess(m, 1.5);
    double by_path = 0.0;
    for (const auto& pf : c.x.paths(0)) by_path += pf.value * path_latency(c.instance, c.x, pf.path);
    EXPECT_NEAR(by_path, social_cost(c.instance, c.x), 1e-9 * by_path);
  }
}

TEST(PathLatency, BraessAndFibonacci) {
  const double beta = 1.0;
  const std::size_t m = 4;
  const GeneratedCase c = braess(m, beta);
  for (const auto& pf : c.x.paths(0)) {
    EXPECT_NEAR(path_latency(c.instance, c.x, pf.path), 1.0 + beta * m, 1e-12);
    EXPECT_NEAR(path_latency(c.instance, c.x, pf.path, &c.deviation), 1.0 + beta * m, 1e-12);
  }
  const GeneratedCase f = fibonacci(5, 1.0);
  EXPECT_NEAR(path_latency(f.instance, f.z, f.z.paths(0)[0].path), 1.0, 1e-12);
  const Deviation empty;
  EXPECT_DOUBLE_EQ(path_latency(c.instance, c.z, c.z.paths(0)[0].path, &empty),
                   path_latency(c.instance, c.z, c.z.paths(0)[0].path));
}

TEST(ValidateDeviation, Examples) {
  const Instance inst = helpers::parallel({LatencyFn::polynomial({0.0, 1.0}), LatencyFn::constant(1.0)}, 1.0,
                                          ThresholdPair::alpha_beta(0.0, 0.5));
  EXPECT_TRUE(validate_deviation(inst, Deviation::zero(2)).feasible());
  EXPECT_TRUE(validate_deviation(inst, Deviation()).feasible());
  Deviation edge(2);
  edge.set(0, inst.arc(0).latency.fn().scaled(0.5));
  edge.set(1, ScalarFn::constant(0.5));
  EXPECT_TRUE(validate_deviation(inst, edge).feasible());
  Deviation over(2);
  over.set(0, inst.arc(0).latency.fn().scaled(1.5));
  const DeviationReport r = validate_deviation(inst, over);
  ASSERT_FALSE(r.feasible());
  for (const auto& v : r.violations) {
    EXPECT_EQ(v.arc_id, "a0");
    EXPECT_GT(v.x, 0.0);  // l(0) = 0 leaves the origin feasible
    EXPECT_GT(v.value, v.theta_max);
  }
  Deviation below(2);
  below.set(1, ScalarFn::constant(-0.1));
  EXPECT_FALSE(validate_deviation(inst, below).feasible());
}
