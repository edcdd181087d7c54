#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "devratio/instance.hpp"

namespace devratio {

struct SolverConfig {
  double relative_gap_tol = 1e-8;
  std::size_t max_iterations = 200000;
  std::size_t restarts = 5;
  std::size_t path_cap = 10000;
  std::uint64_t seed = 1;
};

struct EquilibriumResult {
  Flow flow;
  double relative_gap = 0.0;
  std::size_t iterations = 0;
  double potential_value = 0.0;
};

/// Wardrop flow for perceived latencies q = l + delta.
///
/// Path-based descent on the Beckmann potential: every sweep moves flow from
/// each costlier used path of a commodity to its current shortest path, with
/// the step chosen by exact line search (bisection on the monotone directional
/// derivative). Throws NonMonotonePerceived if q is negative or decreasing on
/// the grid over [0, total demand], NotConverged if the relative gap is still
/// above tolerance after max_iterations sweeps.
EquilibriumResult wardrop(const Instance& instance, const Deviation& deviation, const SolverConfig& config);

/// Same, starting from random path splits drawn with `seed`.
EquilibriumResult wardrop_randomized(const Instance& instance, const Deviation& deviation, const SolverConfig& config,
                                     std::uint64_t seed);

/// Heuristic lower estimate of the worst equilibrium cost: the largest social
/// cost over one deterministic and `restarts` randomized solves.
double worst_equilibrium_cost(const Instance& instance, const Deviation& deviation, const SolverConfig& config);

/// sum_i r_i (avg_i - min_i) / sum_i r_i min_i, or the absolute numerator when
/// the denominator vanishes.
double relative_gap(const Instance& instance, const Flow& flow, const Deviation& deviation);

/// sum_a integral_0^{f_a} (l_a + delta_a)(u) du.
double beckmann_potential(const Instance& instance, std::span<const double> arc_flows, const Deviation& deviation);

/// Throws NonMonotonePerceived unless l + delta is non-negative and
/// non-decreasing on the sample grid over [0, total demand].
void check_perceived_monotone(const Instance& instance, const Deviation& deviation);

struct NashViolation {
  std::size_t commodity = 0;
  Path path;
  double latency = 0.0;
  double shortest = 0.0;
};

struct NashReport {
  std::vector<NashViolation> violations;
  double max_excess = 0.0;  // largest latency - shortest over flow-carrying paths
  double max_path_latency = 0.0;
  bool ok() const { return violations.empty(); }
};

/// Every flow-carrying path must have perceived latency <= shortest + eps.
/// Paths carrying at most `support` flow are ignored.
NashReport verify_nash(const Instance& instance, const Flow& flow, const Deviation& deviation, double eps,
                       double support = 0.0);

}  // namespace devratio
