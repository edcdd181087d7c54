#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "devratio/instance.hpp"

namespace devratio {

/// A lower-bound construction: instance, the deviation that induces x, the
/// unperturbed Nash flow z and the deviated Nash flow x.
struct GeneratedCase {
  Instance instance;
  Deviation deviation;
  Flow z;
  Flow x;
  double expected_ratio = 1.0;
  /// C(x)/C(z) as built. Equal to expected_ratio except for fibonacci, where
  /// expected_ratio is the guaranteed lower bound.
  double observed_ratio = 1.0;
  std::string family;
};

/// Generalized Braess graph G^m with ramp y_m(g) = m(m-1) beta max{0, g - 1/m}.
/// Ratio 1 + beta m. Throws InvalidInput for m < 2 or beta < 0.
GeneratedCase braess(std::size_t m, double beta);

/// Two commodities on G^m plus a second sink t2 (n = 2m + 1). Ratio 1 + beta r m.
/// r = 1 returns the single-commodity braess(m, beta).
GeneratedCase braess_odd(std::size_t m, double beta, double r);

/// Two commodities on G^m with t2 = v1 (n = 2m). Ratio (1 + beta r m) - beta (r - 1).
GeneratedCase braess_even(std::size_t m, double beta, double r);

/// Fibonacci instance G^p (p odd >= 3) with rung ramps rising over
/// [1, 1 + ramp_delta]. The split of x over the shortcut paths is solved
/// numerically; throws NoValidSplit if no split keeps every rung saturated.
/// expected_ratio = 1 + beta F_{p+1}.
GeneratedCase fibonacci(std::size_t p, double beta, double ramp_delta = 0.01);

/// F_1 = F_2 = 1.
double fibonacci_number(std::size_t k);

/// Two parallel arcs s -> t: "fixed" with l = 1/r, delta = beta/r and "scaled"
/// with l = (1 + beta) c(y)/(r c(r)), delta = 0.
struct SmoothnessCase {
  Instance instance;
  Deviation deviation;
  Flow x;       // all r units on "scaled", C(x) = 1 + beta
  Flow z_star;  // epsilon on "scaled", r - epsilon on "fixed"
  double cost_x = 0.0;
  double cost_z_star = 0.0;
  double ratio = 0.0;
};

/// Throws InvalidInput unless 0 < epsilon < r and c(r) > 0.
SmoothnessCase smoothness_tight(const LatencyFn& c, double beta, double r, double epsilon);

/// Sup over epsilon in (0, r) of the smoothness_tight ratio, by a grid of
/// `samples` points refined with golden-section search.
double smoothness_tight_sup(const LatencyFn& c, double beta, double r, std::size_t samples = 2000);

struct Digraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> arcs;
};

Digraph directed_path(std::size_t n);
/// Centre "0" with arcs to every other node.
Digraph out_star(std::size_t n);
Digraph complete_digraph(std::size_t n);

/// l_a(x) = x, theta_min = 0, theta_max = n - 1 on every arc, one unit from s to t.
/// A deviation with C(f) >= n - 1 exists iff G has a Hamiltonian s-t path.
Instance hamiltonian_reduction(const Digraph& graph, const std::string& s, const std::string& t);

/// Two commodities without a common source whose unit flow is inducible with
/// delta = 0 although the auxiliary graph has the negative cycle (1,4,3,2,1).
std::pair<Instance, Flow> remark_b1_counterexample();

}  // namespace devratio
