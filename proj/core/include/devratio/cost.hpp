#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "devratio/instance.hpp"

namespace devratio {

/// All simple source->sink paths of `commodity`, ordered lexicographically by
/// arc-id sequence. Throws PathExplosion if there are more than `cap`.
std::vector<Path> enumerate_paths(const Instance& instance, std::size_t commodity, std::size_t cap);

/// C(f) = sum_a f_a l_a(f_a). Deviations never enter the social cost.
double social_cost(const Instance& instance, const Flow& flow);

/// sum over the path of l_a(f_a), plus delta_a(f_a) when a deviation is given.
double path_latency(const Instance& instance, const Flow& flow, const Path& path, const Deviation* deviation = nullptr);
double path_latency(const Instance& instance, std::span<const double> arc_flows, const Path& path,
                    const Deviation* deviation = nullptr);

/// q_a(x) = l_a(x) + delta_a(x).
inline double perceived(const Instance& instance, const Deviation* deviation, ArcIndex a, double x) {
  const double l = instance.arc(a).latency(x);
  return deviation ? l + deviation->value(a, x) : l;
}

struct DeviationViolation {
  std::string arc_id;
  double x = 0.0;
  double value = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
};

struct DeviationReport {
  std::vector<DeviationViolation> violations;
  bool feasible() const { return violations.empty(); }
};

/// Checks theta_min <= delta <= theta_max on the grid of 64 samples per unit
/// up to the instance check range plus every breakpoint involved.
DeviationReport validate_deviation(const Instance& instance, const Deviation& deviation, double tol = 1e-12);

}  // namespace devratio
