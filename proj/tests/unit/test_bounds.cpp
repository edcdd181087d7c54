#include <gtest/gtest.h>

#include <random>

#include "devratio/alternating.hpp"
#include "devratio/bounds.hpp"
#include "devratio/generators.hpp"
#include "helpers.hpp"

using namespace devratio;

TEST(Pra, Values) {
  EXPECT_DOUBLE_EQ(pra_bound(0.0, 2.0, 8, 1.0), 1.0);
  for (std::size_t n : {2u, 5u, 8u}) {
    for (double gk : {0.5, 1.0, 3.0}) {
      EXPECT_DOUBLE_EQ(pra_bound(gk / 2.0, 2.0, n, 1.5), bound_alpha_beta(n, 0.0, gk, {}, {1.5}).coarse);
    }
  }
  const double kappa = 4.0;
  EXPECT_DOUBLE_EQ(pra_bound(-1.0 / (2.0 * kappa), kappa, 7, 2.0), 1.0 + 3.0 * 2.0);
  EXPECT_ERROR_CODE(pra_bound(-1.0 / kappa, kappa, 7, 1.0), GammaOutOfRange);
}

TEST(Pra, LowerEven) {
  EXPECT_DOUBLE_EQ(pra_lower_even(1.0, 1.0, 4, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(pra_lower_even(0.0, 1.0, 6, 3.0), 1.0);
  for (double g : {-0.3, 0.7}) EXPECT_DOUBLE_EQ(pra_lower_even(g, 1.0, 8, 1.0), pra_bound(g, 1.0, 8, 1.0));
  EXPECT_LE(pra_lower_even(-0.3, 1.0, 8, 2.0), pra_bound(-0.3, 1.0, 8, 2.0));
}

TEST(Stability, Values) {
  EXPECT_NEAR(stability_bound(1.0 / 3.0, 5, 1.0), 2.0, 1e-14);
  EXPECT_LT(stability_bound(1e-9, 5, 1.0), 1e-8);
  for (double eps : {0.05, 0.2}) {
    EXPECT_NEAR(stability_bound(eps, 9, 1.0), bound_alpha_beta(9, -eps, eps, {}, {1.0}).coarse - 1.0, 1e-14);
  }
  EXPECT_ERROR_CODE(stability_bound(0.0, 5, 1.0), EpsilonOutOfRange);
  EXPECT_ERROR_CODE(stability_bound(1.0, 5, 1.0), EpsilonOutOfRange);
}

TEST(MuHat, AffineClosedForm) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (double beta : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    for (int k = 0; k < 4; ++k) {
      const double c = u(rng), d = u(rng);
      SmoothnessQuery q{LatencyFn::polynomial({d, c}), beta};
      const MuHatResult r = mu_hat_detail(q);
      EXPECT_NEAR(r.value, 1.0 / (4.0 * (1.0 + beta)), 1e-3) << c << " " << d << " " << beta;
    }
  }
}

TEST(MuHat, LinearMaximizer) {
  for (double beta : {0.0, 1.0, 2.0}) {
    const MuHatResult r = mu_hat_detail({LatencyFn::linear(), beta});
    EXPECT_NEAR(r.argmax_z / r.argmax_x, 1.0 / (2.0 * (1.0 + beta)), 1e-2);
  }
}

TEST(MuHat, ConstantIsZeroAndMonotoneInBeta) {
  EXPECT_DOUBLE_EQ(mu_hat({LatencyFn::constant(2.0), 0.0}), 0.0);
  const LatencyFn quad = LatencyFn::polynomial({1.0, 0.0, 1.0});
  double prev = mu_hat({quad, 0.0});
  for (double beta : {0.5, 1.0, 2.0}) {
    const double v = mu_hat({quad, beta});
    EXPECT_LE(v, prev + 1e-9);
    prev = v;
  }
}

TEST(Bpoa, Values) {
  EXPECT_NEAR(bpoa_bound(0.25, 0.0), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(bpoa_bound(1.0 / 8.0, 1.0), 16.0 / 7.0, 1e-15);
  EXPECT_DOUBLE_EQ(bpoa_bound(0.0, 2.0), 3.0);
  EXPECT_GT(bpoa_bound(0.1, 2.0), 3.0);
  EXPECT_ERROR_CODE(bpoa_bound(1.0, 0.0), MuTooLarge);
}

TEST(PathDeviation, Values) {
  EXPECT_DOUBLE_EQ(path_deviation_bound(0.25, 0.0), bpoa_bound(0.25, 0.0));
  EXPECT_DOUBLE_EQ(path_deviation_bound(0.25, 1.0), 4.0);
  EXPECT_ERROR_CODE(path_deviation_bound(0.25, 3.0), MuTooLarge);
}

TEST(Gap, Values) {
  EXPECT_DOUBLE_EQ(bpoa_dr_gap(0.0, 3.0), 0.0);
  EXPECT_NEAR(bpoa_dr_gap(0.25, 0.0), 1.0 / 3.0, 1e-15);
  for (double beta : {0.5, 1.0, 4.0}) {
    const double g = bpoa_dr_gap(1.0 / (4.0 * (1.0 + beta)), beta);
    EXPECT_NEAR(g, (1.0 + beta) / (4.0 * beta + 3.0), 1e-14);
    EXPECT_LE(g, 1.0 / 3.0);
  }
  EXPECT_ERROR_CODE(bpoa_dr_gap(1.5, 0.0), MuTooLarge);
}

TEST(Heterogeneous, Values) {
  EXPECT_DOUBLE_EQ(heterogeneous_bound({0.7, 0.7}, {0.25, 0.75}, 2.0), 1.0 + 2.0 * 0.7);
  EXPECT_DOUBLE_EQ(heterogeneous_bound({0.0, 1.0}, {0.5, 0.5}, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(heterogeneous_bound({0.0, 0.0}, {0.5, 0.5}, 2.0), 1.0);
  EXPECT_ERROR_CODE(heterogeneous_bound({1.0}, {0.5}, 1.0), DemandNotNormalized);
  EXPECT_ERROR_CODE(heterogeneous_bound({1.0, 1.0}, {1.0}, 1.0), InvalidInput);
}

TEST(Heterogeneous, CheckedVariant) {
  const Instance inst = helpers::parallel({LatencyFn::linear(), LatencyFn::constant(1.0)});
  const Flow x(inst, {{{{0}, 1.0}}});
  const Flow z(inst, {{{{0}, 0.5}, {{1}, 0.5}}});
  EXPECT_DOUBLE_EQ(heterogeneous_bound_checked({1.0}, {1.0}, 1.0, build_alt_path_tree(inst, x, z)), 2.0);
  const GeneratedCase c = braess(3, 1.0);
  EXPECT_ERROR_CODE(heterogeneous_bound_checked({1.0}, {1.0}, 1.0, build_alt_path_tree(c.instance, c.x, c.z)),
                    PreconditionUnmet);
}
