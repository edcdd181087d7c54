#pragma once

#include <cstddef>
#include <vector>

#include "devratio/alternating.hpp"
#include "devratio/function.hpp"

namespace devratio {

/// Price of Risk Aversion upper bound:
/// 1 + g k ceil((n-1)/2) r for g >= 0, 1 - g k/(1 + g k) ceil((n-1)/2) r for -1/k < g <= 0.
/// Throws GammaOutOfRange when g <= -1/k.
double pra_bound(double gamma, double kappa, std::size_t n, double r);

/// Matching lower bound for even n:
/// (1 + g k r ceil((n-1)/2)) - g k (r - 1) for g >= 0, and
/// (1 - g k/(1 + g k) r ceil((n-1)/2)) + g k/(1 + g k) (r - 1) otherwise.
double pra_lower_even(double gamma, double kappa, std::size_t n, double r);

/// Relative social-cost error bound 2 eps/(1 - eps) ceil((n-1)/2) r under
/// multiplicative latency perturbations of size eps. Throws EpsilonOutOfRange.
double stability_bound(double epsilon, std::size_t n, double r);

struct SmoothnessQuery {
  LatencyFn latency;
  double beta = 0.0;
  double domain_max = 1e6;
  std::size_t grid = 512;
};

struct MuHatResult {
  double value = 0.0;
  double argmax_x = 0.0;
  double argmax_z = 0.0;
  /// The best grid point sits on the largest sampled x: the supremum may only
  /// be approached as x grows and the value is a truncation.
  bool boundary = false;
};

/// sup over 0 <= z <= x <= domain_max of z (l(x) - (1 + beta) l(z)) / (x l(x)),
/// clamped below at 0. Pairs with z > x never contribute (l is non-decreasing).
/// Grid over u = z/x (linear) and x (logarithmic), then alternating
/// golden-section refinement around the best cell.
MuHatResult mu_hat_detail(const SmoothnessQuery& query);
double mu_hat(const SmoothnessQuery& query);

/// (1 + beta)/(1 - mu). Throws MuTooLarge for mu >= 1.
double bpoa_bound(double mu_hat_value, double beta);

/// (1 + beta)/(1 - (1 + beta) mu0). Throws MuTooLarge unless mu0 < 1/(1 + beta).
double path_deviation_bound(double mu_hat_zero, double beta);

/// (1 + beta) mu/(1 - mu). Throws MuTooLarge for mu >= 1.
double bpoa_dr_gap(double mu_hat_value, double beta);

/// 1 + beta sum_i tau_i r_i for demands summing to 1 (DemandNotNormalized otherwise).
/// Only valid when an alternating path made of Z arcs alone exists.
double heterogeneous_bound(const std::vector<double>& taus, const std::vector<double>& demands, double beta);

/// As above, but refuses (PreconditionUnmet) unless every alternating path of
/// the tree consists of Z arcs only.
double heterogeneous_bound_checked(const std::vector<double>& taus, const std::vector<double>& demands, double beta,
                                   const AltPathTree& tree);

}  // namespace devratio
