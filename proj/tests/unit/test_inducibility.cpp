#include <gtest/gtest.h>

#include <algorithm>

#include "devratio/cost.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/generators.hpp"
#include "devratio/inducibility.hpp"
#include "devratio/random_instance.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace devratio;

TEST(AuxGraph, ZeroFlowHasNoReversedArcs) {
  const Instance inst = make_instance({"s", "a", "t"},
                                      {{"x", "s", "t", LatencyFn::constant(1.0)}, {"y", "s", "a", LatencyFn::linear()},
                                       {"z", "a", "t", LatencyFn::linear()}},
                                      {{"s", "t", 1.0}});
  const Flow f(inst, {{{{0}, 1.0}}});
  const AuxGraph aux = build_aux_graph(inst, f);
  std::size_t reversed = 0;
  for (const auto& a : aux.arcs) reversed += a.reversed;
  EXPECT_EQ(reversed, 1u);
  EXPECT_EQ(aux.arcs.size(), 4u);
}

TEST(AuxGraph, CancellingPairAndCosts) {
  const Instance inst = helpers::parallel({LatencyFn::polynomial({1.0, 2.0})});
  const Flow f(inst, {{{{0}, 1.0}}});
  const AuxGraph aux = build_aux_graph(inst, f);
  ASSERT_EQ(aux.arcs.size(), 2u);
  double sum = 0.0;
  for (const auto& a : aux.arcs) {
    sum += a.cost;
    EXPECT_DOUBLE_EQ(std::abs(a.cost), 3.0);
  }
  EXPECT_DOUBLE_EQ(sum, 0.0);
}

TEST(AuxGraph, PairSumsToThresholdWidth) {
  const Instance inst = random_common_source_instance(9, {.alpha = -0.3, .beta = 0.7});
  const auto res = wardrop(inst, Deviation(), SolverConfig{});
  const AuxGraph aux = build_aux_graph(inst, res.flow);
  for (const auto& r : aux.arcs) {
    if (!r.reversed) continue;
    EXPECT_LE(r.cost, 1e-12);
    for (const auto& f : aux.arcs) {
      if (f.reversed || f.original != r.original) continue;
      const double x = res.flow.arc_flow(r.original);
      EXPECT_NEAR(f.cost + r.cost, inst.theta_max(r.original, x) - inst.theta_min(r.original, x), 1e-12);
    }
  }
}

TEST(AuxGraph, SplitSourceInstanceHasReversedArcs) {
  const auto [inst, flow] = remark_b1_counterexample();
  const AuxGraph aux = build_aux_graph(inst, flow);
  std::vector<std::string> rev;
  for (const auto& a : aux.arcs)
    if (a.reversed) rev.push_back(inst.arc(a.original).id);
  EXPECT_NE(std::find(rev.begin(), rev.end(), "1-2"), rev.end());
  EXPECT_NE(std::find(rev.begin(), rev.end(), "3-4"), rev.end());
  EXPECT_EQ(std::find(rev.begin(), rev.end(), "1-4"), rev.end());
  EXPECT_LT(oracle::min_cycle_cost(oracle::aux_cycles(inst, flow)), -0.5);
}

TEST(IsInducible, NashFlowsAreInducible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_common_source_instance(seed);
    const auto res = wardrop(inst, Deviation(), SolverConfig{});
    EXPECT_TRUE(is_inducible(inst, res.flow).inducible) << seed;
  }
}

TEST(IsInducible, BraessExamples) {
  for (std::size_t m : {2u, 3u, 5u}) {
    const GeneratedCase c = braess(m, 1.0);
    EXPECT_TRUE(is_inducible(c.instance, c.x).inducible);
    const Instance half = c.instance.with_thresholds(ThresholdPair::alpha_beta(0.0, 0.5));
    const InducibilityResult r = is_inducible(half, c.x);
    ASSERT_FALSE(r.inducible);
    ASSERT_TRUE(r.witness);
    EXPECT_LT(r.witness->cost, -1e-10);
    // Witness is a closed walk of aux arcs whose costs add up.
    const AuxGraph aux = build_aux_graph(half, c.x);
    double sum = 0.0;
    const auto& arcs = r.witness->aux_arcs;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      sum += aux.arcs[arcs[i]].cost;
      EXPECT_EQ(aux.arcs[arcs[i]].head, aux.arcs[arcs[(i + 1) % arcs.size()]].tail);
    }
    EXPECT_NEAR(sum, r.witness->cost, 1e-12);
    EXPECT_LT(oracle::min_cycle_cost(oracle::aux_cycles(half, c.x)), -1e-10);
    EXPECT_FALSE(oracle_inducible(half, c.x).inducible);
  }
}

TEST(IsInducible, RefusesWithoutCommonSource) {
  const auto [inst, flow] = remark_b1_counterexample();
  EXPECT_ERROR_CODE(is_inducible(inst, flow), NotCommonSource);
  EXPECT_ERROR_CODE(recover_deviation(inst, flow), NotCommonSource);
  EXPECT_TRUE(oracle_inducible(inst, flow).inducible);
}

TEST(IsInducible, AgreesWithCycleEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = random_common_source_instance(seed, {.max_nodes = 5, .beta = 0.5});
    const Instance wide = inst.with_thresholds(ThresholdPair::alpha_beta(0.0, 3.0));
    const auto res = wardrop(wide, random_alpha_beta_deviation(wide, 0.0, 3.0, seed), SolverConfig{});
    const double min_cycle = oracle::min_cycle_cost(oracle::aux_cycles(inst, res.flow));
    if (std::abs(min_cycle) < 1e-8) continue;
    EXPECT_EQ(is_inducible(inst, res.flow).inducible, min_cycle > 0.0) << seed;
  }
}

TEST(RecoverDeviation, RoundTrip) {
  const GeneratedCase c = braess(4, 1.5);
  const Deviation d = recover_deviation(c.instance, c.x);
  EXPECT_TRUE(validate_deviation(c.instance, d).feasible());
  EXPECT_TRUE(verify_nash(c.instance, c.x, d, 1e-7).ok());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_common_source_instance(seed);
    const auto res = wardrop(inst, Deviation(), SolverConfig{});
    const Deviation r = recover_deviation(inst, res.flow);
    EXPECT_TRUE(validate_deviation(inst, r).feasible());
    EXPECT_TRUE(verify_nash(inst, res.flow, r, 1e-7).ok()) << seed;
  }
}

TEST(RecoverDeviation, NotInducibleThrows) {
  const GeneratedCase c = braess(3, 1.0);
  const Instance half = c.instance.with_thresholds(ThresholdPair::alpha_beta(0.0, 0.5));
  EXPECT_ERROR_CODE(recover_deviation(half, c.x), NotInducible);
}

TEST(RecoverDeviation, HamiltonianPathReachesNMinusOne) {
  const Digraph g = directed_path(5);
  const Instance inst = hamiltonian_reduction(g, "0", "4");
  const std::vector<std::string> nodes = {"0", "1", "2", "3", "4"};
  const Flow f(inst, {{{path_from_nodes(inst, nodes), 1.0}}});
  const Deviation d = recover_deviation(inst, f);
  EXPECT_TRUE(verify_nash(inst, f, d, 1e-7).ok());
  EXPECT_DOUBLE_EQ(social_cost(inst, f), 4.0);
}

TEST(Oracle, SingleArcAndTolerance) {
  const Instance inst = helpers::parallel({LatencyFn::linear()}, 1.0, ThresholdPair::alpha_beta(0.0, 1.0));
  const Flow f(inst, {{{{0}, 1.0}}});
  const OracleResult r = oracle_inducible(inst, f);
  EXPECT_TRUE(r.inducible);
  EXPECT_GT(r.tolerance, 0.0);
  EXPECT_LE(r.violation, r.tolerance);
}

TEST(Oracle, PigouSplitNeedsWideThresholds) {
  // Half on each arc: a0 needs delta = 0.5 = beta * l(0.5), so beta >= 1.
  const Flow split = [] {
    const Instance p = helpers::pigou();
    return Flow(p, {{{{0}, 0.5}, {{1}, 0.5}}});
  }();
  const Instance narrow = helpers::pigou(ThresholdPair::alpha_beta(0.0, 0.5));
  const Instance wide = helpers::pigou(ThresholdPair::alpha_beta(0.0, 2.0));
  const Flow fn(narrow, split.all_paths());
  const Flow fw(wide, split.all_paths());
  EXPECT_FALSE(oracle_inducible(narrow, fn).inducible);
  EXPECT_FALSE(is_inducible(narrow, fn).inducible);
  EXPECT_TRUE(oracle_inducible(wide, fw).inducible);
  EXPECT_TRUE(is_inducible(wide, fw).inducible);
}

TEST(Oracle, BudgetExceeded) {
  const GeneratedCase c = braess(4, 1.0);
  EXPECT_ERROR_CODE(oracle_inducible(c.instance, c.x, 1e-3, 10), TooLarge);
}

TEST(PathInequalities, HoldForInducibleFlows) {
  const GeneratedCase c = braess(3, 1.0);
  for (std::size_t i = 0; i < c.instance.commodity_count(); ++i) {
    const auto paths = enumerate_aux_paths(c.instance, c.x, i, 10000);
    EXPECT_FALSE(paths.empty());
    const auto rep = check_path_inequalities(c.instance, c.x, paths);
    EXPECT_TRUE(rep.ok());
    EXPECT_GE(rep.checked, paths.size());
  }
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Instance inst = random_common_source_instance(seed, {.max_nodes = 4});
    const auto res = wardrop(inst, random_alpha_beta_deviation(inst, 0.0, 1.0, seed), SolverConfig{});
    if (!is_inducible(inst, res.flow).inducible) continue;
    for (std::size_t i = 0; i < inst.commodity_count(); ++i) {
      EXPECT_TRUE(check_path_inequalities(inst, res.flow, enumerate_aux_paths(inst, res.flow, i, 10000), 1e-7).ok())
          << seed;
    }
  }
}

TEST(PathInequalities, FlowPathItselfIsTight) {
  const Instance inst = helpers::pigou();
  const Flow f(inst, {{{{0}, 1.0}}});
  AuxPath chi{0, {{0, false}}};
  EXPECT_DOUBLE_EQ(aux_path_cost(inst, f, chi), 1.0);
  EXPECT_TRUE(check_path_inequalities(inst, f, {chi}).ok());
  AuxPath bad{0, {{1, true}}};
  EXPECT_ERROR_CODE(aux_path_cost(inst, f, bad), InvalidInput);
}

TEST(PathInequalities, DetectsViolation) {
  const Instance inst = helpers::pigou();
  const Flow f(inst, {{{{1}, 1.0}}});
  // Forward a0 costs 0 < l_{a1}(1) = 1: the chi inequality fails.
  AuxPath chi{0, {{0, false}}};
  EXPECT_FALSE(check_path_inequalities(inst, f, {chi}).ok());
}
