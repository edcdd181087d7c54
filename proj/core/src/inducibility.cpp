#include "devratio/inducibility.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "devratio/cost.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/errors.hpp"
#include "devratio/shortest_path.hpp"

namespace devratio {
namespace {

constexpr double kCycleEps = 1e-11;
constexpr double kNegativeCycleCost = -1e-10;

void require_common_source(const Instance& instance) {
  if (!instance.common_source()) {
    fail(ErrorCode::NotCommonSource,
         "the negative-cycle characterization needs a common source; with distinct sources a flow can be "
         "inducible although the auxiliary graph has a negative cycle (see the remark-b1 instance)");
  }
}

std::vector<WeightedArc> weighted(const AuxGraph& aux) {
  std::vector<WeightedArc> w;
  w.reserve(aux.arcs.size());
  for (const auto& a : aux.arcs) w.push_back({a.tail, a.head, a.cost});
  return w;
}

std::optional<NegativeCycle> run_cycle_search(const AuxGraph& aux, std::optional<NodeIndex> source) {
  const auto w = weighted(aux);
  const auto bf = bellman_ford(aux.node_count, w, source, kCycleEps);
  if (!bf.negative_cycle) return std::nullopt;
  NegativeCycle c{*bf.negative_cycle, 0.0, source.has_value()};
  for (std::size_t k : c.aux_arcs) c.cost += aux.arcs[k].cost;
  if (c.cost >= kNegativeCycleCost) return std::nullopt;
  return c;
}

}  // namespace

AuxGraph build_aux_graph(const Instance& instance, const Flow& flow) {
  AuxGraph g;
  g.node_count = instance.node_count();
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    const Arc& arc = instance.arc(a);
    const double f = flow.arc_flow(a);
    g.arcs.push_back({arc.tail, arc.head, a, false, arc.latency(f) + instance.theta_max(a, f)});
  }
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    const double f = flow.arc_flow(a);
    if (f <= kSupportThreshold) continue;
    const Arc& arc = instance.arc(a);
    const double cost = -arc.latency(f) - instance.theta_min(a, f);
    if (cost > 1e-12) fail(ErrorCode::InvalidInput, "reversed arc with positive cost on " + arc.id);
    g.arcs.push_back({arc.head, arc.tail, a, true, cost});
  }
  return g;
}

std::string aux_graph_to_dot(const Instance& instance, const AuxGraph& aux) {
  std::ostringstream os;
  os.precision(6);
  os << "digraph aux {\n  rankdir=LR;\n";
  for (const auto& id : instance.node_ids()) os << "  \"" << id << "\";\n";
  for (const auto& a : aux.arcs) {
    os << "  \"" << instance.node_id(a.tail) << "\" -> \"" << instance.node_id(a.head) << "\" [label=\""
       << instance.arc(a.original).id << (a.reversed ? "'" : "") << ": " << a.cost << "\"";
    if (a.reversed) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::optional<NegativeCycle> find_negative_cycle(const AuxGraph& aux, std::optional<NodeIndex> source) {
  if (source) {
    if (auto c = run_cycle_search(aux, source)) return c;
  }
  auto c = run_cycle_search(aux, std::nullopt);
  if (c) c->reachable = !source.has_value();
  return c;
}

InducibilityResult is_inducible(const Instance& instance, const Flow& flow) {
  require_common_source(instance);
  const AuxGraph aux = build_aux_graph(instance, flow);
  const NodeIndex s = instance.commodity(0).source;
  InducibilityResult r;
  if (auto c = run_cycle_search(aux, s)) {
    r.witness = std::move(c);
    return r;
  }
  // Cycles through reversed arcs are always reachable from s, and cycles of
  // forward arcs are non-negative, so this should never fire; it is reported
  // rather than assumed.
  if (auto c = run_cycle_search(aux, std::nullopt)) {
    c->reachable = false;
    r.unreachable_negative_cycle = true;
    r.witness = std::move(c);
  }
  r.inducible = true;
  return r;
}

Deviation recover_deviation(const Instance& instance, const Flow& flow) {
  require_common_source(instance);
  const AuxGraph aux = build_aux_graph(instance, flow);
  const NodeIndex s = instance.commodity(0).source;
  const auto bf = bellman_ford(aux.node_count, weighted(aux), s, kCycleEps);
  if (bf.negative_cycle) {
    double cost = 0.0;
    for (std::size_t k : *bf.negative_cycle) cost += aux.arcs[k].cost;
    if (cost < kNegativeCycleCost) fail(ErrorCode::NotInducible, "auxiliary graph has a negative cycle");
  }
  // Unreachable nodes get a common large potential, which yields delta = theta_min there.
  double big = 0.0;
  for (double d : bf.dist) {
    if (d != kInfinity) big = std::max(big, std::abs(d));
  }
  big = 1e6 * (1.0 + big);
  std::vector<double> pi(bf.dist);
  for (double& d : pi) {
    if (d == kInfinity) d = big;
  }
  Deviation dev(instance.arc_count());
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    const Arc& arc = instance.arc(a);
    const double f = flow.arc_flow(a);
    const double lo = instance.theta_min(a, f);
    const double hi = instance.theta_max(a, f);
    double d = std::max(lo, pi[arc.head] - pi[arc.tail] - arc.latency(f));
    d = std::min(d, hi);
    if (d >= 0.0) {
      if (hi > 1e-14) {
        dev.set(a, instance.theta_max_fn(a).scaled(std::clamp(d / hi, 0.0, 1.0)));
      } else {
        dev.set(a, ScalarFn::zero());
      }
    } else if (lo < -1e-14) {
      dev.set(a, instance.theta_min_magnitude_fn(a).scaled(-std::clamp(d / lo, 0.0, 1.0)));
    } else {
      dev.set(a, ScalarFn::constant(d));
    }
  }
  return dev;
}

OracleResult oracle_inducible(const Instance& instance, const Flow& flow, double grid_resolution,
                              std::size_t budget) {
  if (!(grid_resolution > 0.0) || grid_resolution > 1.0) {
    fail(ErrorCode::InvalidInput, "grid resolution must lie in (0, 1]");
  }
  const std::size_t m = instance.arc_count();
  // Variables: support arcs.
  std::vector<int> var_of(m, -1);
  std::vector<double> lo, step;
  std::vector<std::size_t> levels;
  std::vector<double> fixed(m, 0.0);  // l_a(f_a) + fixed delta for non-support arcs, l_a(f_a) for support arcs
  const auto count = static_cast<std::size_t>(std::llround(1.0 / grid_resolution)) + 1;
  OracleResult result;
  result.tolerance = 1e-9;
  for (std::size_t a = 0; a < m; ++a) {
    const double f = flow.arc_flow(a);
    const double l = instance.arc(a).latency(f);
    if (f > kSupportThreshold) {
      const double tmin = instance.theta_min(a, f);
      const double range = instance.theta_max(a, f) - tmin;
      var_of[a] = static_cast<int>(lo.size());
      lo.push_back(tmin);
      if (range > 0.0) {
        step.push_back(range * grid_resolution);
        levels.push_back(count);
        result.tolerance += 0.5 * step.back();
      } else {
        step.push_back(0.0);
        levels.push_back(1);
      }
      fixed[a] = l;
    } else {
      fixed[a] = l + instance.theta_max(a, f);
    }
  }
  const std::size_t nv = lo.size();

  // Constraints q_P - q_P' <= v as (constant, coefficients over variables).
  struct Constraint {
    double constant = 0.0;
    std::vector<int> coef;
  };
  std::map<std::pair<std::vector<int>, long long>, bool> seen;
  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < instance.commodity_count(); ++i) {
    const auto all = enumerate_paths(instance, i, 10000);
    for (const auto& pf : flow.paths(i)) {
      if (pf.value <= kSupportThreshold) continue;
      for (const auto& other : all) {
        if (other == pf.path) continue;
        Constraint c{0.0, std::vector<int>(nv, 0)};
        std::vector<int> mult(m, 0);
        for (ArcIndex a : pf.path) mult[a] += 1;
        for (ArcIndex a : other) mult[a] -= 1;
        for (std::size_t a = 0; a < m; ++a) {
          if (mult[a] == 0) continue;
          c.constant += mult[a] * fixed[a];
          if (var_of[a] >= 0) c.coef[var_of[a]] += mult[a];
        }
        const auto key = std::make_pair(c.coef, std::llround(c.constant * 1e12));
        if (seen.emplace(key, true).second) cons.push_back(std::move(c));
      }
    }
  }
  if (cons.empty()) {
    result.inducible = true;
    result.violation = 0.0;
    return result;
  }

  // Per-constraint running lower bound: fixed variables at their value, free
  // ones at the extreme that minimizes the left-hand side.
  const std::size_t nc = cons.size();
  auto hi_of = [&](std::size_t v) { return lo[v] + step[v] * static_cast<double>(levels[v] - 1); };
  std::vector<double> cur(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    cur[c] = cons[c].constant;
    for (std::size_t v = 0; v < nv; ++v) {
      const int k = cons[c].coef[v];
      if (k > 0) cur[c] += k * lo[v];
      else if (k < 0) cur[c] += k * hi_of(v);
    }
  }
  auto free_contrib = [&](std::size_t c, std::size_t v) {
    const int k = cons[c].coef[v];
    return k > 0 ? k * lo[v] : (k < 0 ? k * hi_of(v) : 0.0);
  };

  // Branch on variables touching the most constraints first.
  std::vector<std::size_t> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> touch(nv, 0);
  for (const auto& c : cons) {
    for (std::size_t v = 0; v < nv; ++v) touch[v] += c.coef[v] != 0;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return touch[a] > touch[b]; });

  double best = kInfinity;
  std::size_t evals = 0;
  bool done = false;
  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (done) return;
    if (depth == nv) {
      const double v = *std::max_element(cur.begin(), cur.end());
      if (v < best) best = v;
      if (best <= result.tolerance) done = true;
      return;
    }
    const std::size_t var = order[depth];
    std::vector<std::pair<double, std::size_t>> kids;
    kids.reserve(levels[var]);
    for (std::size_t k = 0; k < levels[var]; ++k) {
      if (++evals > budget) fail(ErrorCode::TooLarge, "oracle grid search exceeded its evaluation budget");
      const double val = lo[var] + step[var] * static_cast<double>(k);
      double bound = -kInfinity;
      for (std::size_t c = 0; c < nc; ++c) {
        const int coef = cons[c].coef[var];
        const double b = coef == 0 ? cur[c] : cur[c] - free_contrib(c, var) + coef * val;
        bound = std::max(bound, b);
      }
      if (bound < best) kids.push_back({bound, k});
    }
    std::stable_sort(kids.begin(), kids.end());
    for (const auto& [bound, k] : kids) {
      if (done || bound >= best) break;
      const double val = lo[var] + step[var] * static_cast<double>(k);
      for (std::size_t c = 0; c < nc; ++c) {
        const int coef = cons[c].coef[var];
        if (coef != 0) cur[c] += coef * val - free_contrib(c, var);
      }
      self(self, depth + 1);
      for (std::size_t c = 0; c < nc; ++c) {
        const int coef = cons[c].coef[var];
        if (coef != 0) cur[c] -= coef * val - free_contrib(c, var);
      }
    }
  };
  dfs(dfs, 0);
  result.evaluations = evals;
  result.violation = std::max(0.0, best);
  result.inducible = best <= result.tolerance;
  return result;
}

double aux_path_cost(const Instance& instance, const Flow& flow, const AuxPath& path) {
  double cost = 0.0;
  for (const auto& st : path.steps) {
    const double f = flow.arc_flow(st.arc);
    const double l = instance.arc(st.arc).latency(f);
    if (st.reversed) {
      if (f <= kSupportThreshold) fail(ErrorCode::InvalidInput, "reversed step on an arc without flow");
      cost -= l + instance.theta_min(st.arc, f);
    } else {
      cost += l + instance.theta_max(st.arc, f);
    }
  }
  return cost;
}

PathInequalityReport check_path_inequalities(const Instance& instance, const Flow& flow,
                                             const std::vector<AuxPath>& alt_paths, double tol) {
  require_common_source(instance);
  PathInequalityReport report;
  const NodeIndex s = instance.commodity(0).source;
  for (std::size_t idx = 0; idx < alt_paths.size(); ++idx) {
    const AuxPath& p = alt_paths[idx];
    const Commodity& k = instance.commodity(p.commodity);
    if (p.steps.empty()) fail(ErrorCode::InvalidInput, "empty auxiliary path");
    auto from = [&](const AuxStep& st) { return st.reversed ? instance.arc(st.arc).head : instance.arc(st.arc).tail; };
    auto to = [&](const AuxStep& st) { return st.reversed ? instance.arc(st.arc).tail : instance.arc(st.arc).head; };
    for (std::size_t j = 1; j < p.steps.size(); ++j) {
      if (to(p.steps[j - 1]) != from(p.steps[j])) fail(ErrorCode::InvalidInput, "auxiliary path is not connected");
    }
    const NodeIndex start = from(p.steps.front());
    const NodeIndex end = to(p.steps.back());
    const bool outward = start == s && end == k.sink;
    const bool inward = start == k.sink && end == s;
    if (!outward && !inward) fail(ErrorCode::InvalidInput, "auxiliary path must join the source and the sink");
    const double cost = aux_path_cost(instance, flow, p);
    for (const auto& pf : flow.paths(p.commodity)) {
      if (pf.value <= kSupportThreshold) continue;
      double lhs = 0.0;
      for (ArcIndex a : pf.path) {
        const double f = flow.arc_flow(a);
        lhs += instance.arc(a).latency(f) + (outward ? instance.theta_min(a, f) : instance.theta_max(a, f));
      }
      ++report.checked;
      if (outward ? lhs > cost + tol : lhs < -cost - tol) {
        report.violations.push_back({idx, pf.path, lhs, outward ? cost : -cost});
      }
    }
  }
  return report;
}

std::vector<AuxPath> enumerate_aux_paths(const Instance& instance, const Flow& flow, std::size_t commodity,
                                         std::size_t cap) {
  require_common_source(instance);
  const AuxGraph aux = build_aux_graph(instance, flow);
  std::vector<std::vector<std::size_t>> out(aux.node_count);
  for (std::size_t k = 0; k < aux.arcs.size(); ++k) out[aux.arcs[k].tail].push_back(k);
  std::vector<AuxPath> paths;
  std::vector<bool> on(aux.node_count, false);
  std::vector<AuxStep> cur;
  auto walk = [&](NodeIndex from, NodeIndex target) {
    auto dfs = [&](auto&& self, NodeIndex v) -> void {
      if (v == target) {
        if (paths.size() >= cap) fail(ErrorCode::PathExplosion, "too many auxiliary paths");
        paths.push_back({commodity, cur});
        return;
      }
      on[v] = true;
      for (std::size_t k : out[v]) {
        const AuxArc& a = aux.arcs[k];
        if (on[a.head]) continue;
        cur.push_back({a.original, a.reversed});
        self(self, a.head);
        cur.pop_back();
      }
      on[v] = false;
    };
    dfs(dfs, from);
  };
  const NodeIndex s = instance.commodity(0).source;
  const NodeIndex t = instance.commodity(commodity).sink;
  walk(s, t);
  walk(t, s);
  return paths;
}

}  // namespace devratio
