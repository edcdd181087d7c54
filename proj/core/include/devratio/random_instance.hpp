#pragma once

#include <cstddef>
#include <cstdint>

#include "devratio/instance.hpp"

namespace devratio {

struct RandomInstanceOptions {
  std::size_t min_nodes = 3;
  std::size_t max_nodes = 8;
  /// Probability of each forward arc beyond the spanning in-arcs.
  double arc_probability = 0.45;
  std::size_t max_commodities = 2;
  /// Latencies a + b x^d with a in [0.1, 2], b in [0, 2], d in {1, .., max_degree}.
  std::size_t max_degree = 2;
  double alpha = 0.0;
  double beta = 1.0;
};

/// Random DAG on nodes "0".."n-1" (topological order) where every node has an
/// in-arc from an earlier node, so node 0 reaches everything. Commodities share
/// source "0", have distinct sinks, demand 1 for the first and [1, 2] for the
/// rest. Thresholds are (alpha, beta). Deterministic in `seed`.
Instance random_common_source_instance(std::uint64_t seed, const RandomInstanceOptions& options = {});

/// delta_a = lambda_a l_a with lambda_a uniform in [alpha, beta]: always
/// feasible for (alpha, beta) thresholds.
Deviation random_alpha_beta_deviation(const Instance& instance, double alpha, double beta, std::uint64_t seed);

}  // namespace devratio
