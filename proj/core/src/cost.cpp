#include "devratio/cost.hpp"

#include <algorithm>

#include "devratio/errors.hpp"

namespace devratio {

std::vector<Path> enumerate_paths(const Instance& instance, std::size_t commodity, std::size_t cap) {
  const Commodity& k = instance.commodity(commodity);
  std::vector<Path> out;
  std::vector<bool> on_path(instance.node_count(), false);
  Path current;
  // Out-arcs are stored in id order, so depth-first order is lexicographic.
  auto dfs = [&](auto&& self, NodeIndex v) -> void {
    if (v == k.sink) {
      if (out.size() >= cap) {
        fail(ErrorCode::PathExplosion, "more than " + std::to_string(cap) + " paths for commodity " +
                                           std::to_string(commodity));
      }
      out.push_back(current);
      return;
    }
    on_path[v] = true;
    for (ArcIndex a : instance.out_arcs(v)) {
      const NodeIndex w = instance.arc(a).head;
      if (on_path[w]) continue;
      current.push_back(a);
      self(self, w);
      current.pop_back();
    }
    on_path[v] = false;
  };
  dfs(dfs, k.source);
  return out;
}

double social_cost(const Instance& instance, const Flow& flow) {
  double c = 0.0;
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    const double f = flow.arc_flow(a);
    if (f != 0.0) c += f * instance.arc(a).latency(f);
  }
  return c;
}

double path_latency(const Instance& instance, std::span<const double> arc_flows, const Path& path,
                    const Deviation* deviation) {
  double total = 0.0;
  for (ArcIndex a : path) total += perceived(instance, deviation, a, arc_flows[a]);
  return total;
}

double path_latency(const Instance& instance, const Flow& flow, const Path& path, const Deviation* deviation) {
  return path_latency(instance, flow.arc_flows(), path, deviation);
}

DeviationReport validate_deviation(const Instance& instance, const Deviation& deviation, double tol) {
  DeviationReport report;
  if (deviation.size() != 0 && deviation.size() != instance.arc_count()) {
    fail(ErrorCode::InvalidInput, "deviation has the wrong number of arcs");
  }
  if (deviation.size() == 0) return report;
  const double range = instance.check_range();
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    const ScalarFn* fns[] = {&deviation[a], &instance.theta_min_magnitude_fn(a), &instance.theta_max_fn(a)};
    const double upto = std::max(range, deviation[a].last_breakpoint());
    for (double x : merged_sample_grid(upto, fns)) {
      const double d = deviation[a](x);
      const double lo = instance.theta_min(a, x);
      const double hi = instance.theta_max(a, x);
      if (d < lo - tol || d > hi + tol) report.violations.push_back({instance.arc(a).id, x, d, lo, hi});
    }
  }
  return report;
}

}  // namespace devratio
