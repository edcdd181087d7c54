#include <gtest/gtest.h>

#include <random>

#include "devratio/cost.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/generators.hpp"
#include "devratio/random_instance.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace devratio;

TEST(Wardrop, PigouRoutesEverythingOnLinearArc) {
  const Instance inst = helpers::pigou();
  const auto res = wardrop(inst, Deviation(), SolverConfig{});
  EXPECT_NEAR(res.flow.arc_flow(0), 1.0, 1e-6);
  EXPECT_NEAR(social_cost(inst, res.flow), 1.0, 1e-6);
}

TEST(Wardrop, ParallelAffineMatchesClosedForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int k = 0; k < 30; ++k) {
    const double a1 = u(rng), b1 = u(rng), a2 = u(rng), b2 = u(rng), r = u(rng);
    const Instance inst = helpers::parallel({LatencyFn::polynomial({b1, a1}), LatencyFn::polynomial({b2, a2})}, r);
    const auto res = wardrop(inst, Deviation(), SolverConfig{});
    EXPECT_NEAR(res.flow.arc_flow(0), oracle::parallel_affine_split(a1, b1, a2, b2, r), 1e-6);
  }
}

TEST(Wardrop, BraessWithAndWithoutDeviation) {
  for (std::size_t m : {2u, 3u, 5u}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const GeneratedCase c = braess(m, beta);
      const auto z = wardrop(c.instance, Deviation(), SolverConfig{});
      EXPECT_NEAR(social_cost(c.instance, z.flow), 1.0, 1e-5);
      const auto x = wardrop(c.instance, c.deviation, SolverConfig{});
      EXPECT_NEAR(social_cost(c.instance, x.flow), 1.0 + beta * static_cast<double>(m), 1e-4);
    }
  }
}

TEST(Wardrop, GapIsRecomputable) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Instance inst = random_common_source_instance(seed);
    const Deviation d = random_alpha_beta_deviation(inst, 0.0, 1.0, seed + 100);
    const SolverConfig cfg;
    const auto res = wardrop(inst, d, cfg);
    EXPECT_LE(res.relative_gap, cfg.relative_gap_tol);
    EXPECT_NEAR(res.relative_gap, relative_gap(inst, res.flow, d), 1e-12);
    EXPECT_NEAR(res.potential_value, beckmann_potential(inst, res.flow.arc_flows(), d),
                1e-12 * std::max(1.0, res.potential_value));
    const NashReport rep = verify_nash(inst, res.flow, d, 10.0 * cfg.relative_gap_tol * std::max(1.0, verify_nash(inst, res.flow, d, 1e9).max_path_latency));
    EXPECT_TRUE(rep.ok()) << "seed " << seed << " excess " << rep.max_excess;
    EXPECT_TRUE(oracle::nash_by_enumeration(inst, res.flow, &d, 1e-6));
  }
}

TEST(Wardrop, PotentialIsMinimalAgainstPerturbations) {
  const Instance inst = random_common_source_instance(3);
  const auto res = wardrop(inst, Deviation(), SolverConfig{});
  const double phi = beckmann_potential(inst, res.flow.arc_flows(), Deviation());
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto other = wardrop_randomized(inst, Deviation(), SolverConfig{}, s);
    EXPECT_GE(beckmann_potential(inst, other.flow.arc_flows(), Deviation()), phi - 1e-7);
  }
}

TEST(Wardrop, StrictlyIncreasingLatenciesGiveUniqueArcFlows) {
  const Instance inst = helpers::parallel(
      {LatencyFn::polynomial({0.2, 1.0}), LatencyFn::polynomial({0.0, 0.5, 1.0}), LatencyFn::polynomial({0.5, 2.0})},
      1.5);
  const auto base = wardrop(inst, Deviation(), SolverConfig{});
  for (std::uint64_t s = 1; s < 6; ++s) {
    const auto other = wardrop_randomized(inst, Deviation(), SolverConfig{}, s);
    for (std::size_t a = 0; a < inst.arc_count(); ++a) EXPECT_NEAR(other.flow.arc_flow(a), base.flow.arc_flow(a), 1e-6);
  }
}

TEST(Wardrop, RejectsDecreasingPerceivedLatency) {
  const Instance inst = helpers::pigou(ThresholdPair::alpha_beta(-0.5, 0.0));
  Deviation d(2);
  d.set(1, ScalarFn::polynomial({0.0, -0.4}));
  EXPECT_ERROR_CODE(wardrop(inst, d, SolverConfig{}), NonMonotonePerceived);
  Deviation neg(2);
  neg.set(1, ScalarFn::constant(-2.0));
  EXPECT_ERROR_CODE(check_perceived_monotone(inst, neg), NonMonotonePerceived);
}

TEST(Wardrop, NotConvergedWithOneSweep) {
  const GeneratedCase c = braess(5, 1.0);
  SolverConfig cfg;
  cfg.max_iterations = 1;
  cfg.relative_gap_tol = 1e-14;
  EXPECT_ERROR_CODE(wardrop(c.instance, c.deviation, cfg), NotConverged);
}

TEST(VerifyNash, BraessFlows) {
  for (std::size_t m : {2u, 3u, 4u, 6u}) {
    const GeneratedCase c = braess(m, 1.0);
    EXPECT_TRUE(verify_nash(c.instance, c.z, Deviation(), 1e-9).ok());
    EXPECT_TRUE(verify_nash(c.instance, c.x, c.deviation, 1e-9).ok());
    EXPECT_FALSE(verify_nash(c.instance, c.z, c.deviation, 1e-9).ok());
    EXPECT_TRUE(oracle::nash_by_enumeration(c.instance, c.x, &c.deviation, 1e-9));
    EXPECT_FALSE(oracle::nash_by_enumeration(c.instance, c.z, &c.deviation, 1e-9));
  }
}

TEST(VerifyNash, ReportsExcess) {
  const Instance inst = helpers::pigou();
  const Flow f(inst, {{{{1}, 1.0}}});
  const NashReport rep = verify_nash(inst, f, Deviation(), 1e-9);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_DOUBLE_EQ(rep.violations[0].latency, 1.0);
  EXPECT_DOUBLE_EQ(rep.violations[0].shortest, 0.0);
  EXPECT_DOUBLE_EQ(rep.max_excess, 1.0);
}

TEST(WorstEquilibrium, BraessAndFibonacci) {
  const GeneratedCase c = braess(4, 1.0);
  EXPECT_NEAR(worst_equilibrium_cost(c.instance, c.deviation, SolverConfig{}), 5.0, 1e-4);
  const GeneratedCase f = fibonacci(3, 1.0);
  EXPECT_GE(worst_equilibrium_cost(f.instance, f.deviation, SolverConfig{}), 1.0 + 3.0 - 1e-4);
}

TEST(RelativeGap, ZeroAtEquilibrium) {
  const GeneratedCase c = braess(3, 1.0);
  EXPECT_NEAR(relative_gap(c.instance, c.z, Deviation()), 0.0, 1e-12);
  EXPECT_GT(relative_gap(c.instance, c.z, c.deviation), 0.1);
}
