#include "devratio/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "devratio/cost.hpp"
#include "devratio/errors.hpp"
#include "devratio/shortest_path.hpp"

namespace devratio {
namespace {

const Deviation kNoDeviation;

const Deviation* dev_ptr(const Deviation& d) { return d.size() == 0 ? nullptr : &d; }

std::vector<double> arc_costs(const Instance& instance, std::span<const double> f, const Deviation* dev) {
  std::vector<double> q(instance.arc_count());
  for (std::size_t a = 0; a < q.size(); ++a) q[a] = perceived(instance, dev, a, f[a]);
  return q;
}

// Shortest path under arbitrary costs; Bellman-Ford only when some cost is negative.
Path shortest(const Instance& instance, std::span<const double> q, NodeIndex s, NodeIndex t) {
  if (std::all_of(q.begin(), q.end(), [](double c) { return c >= 0.0; })) {
    return tree_path(instance, dijkstra(instance, s, q), t);
  }
  std::vector<WeightedArc> arcs;
  for (std::size_t a = 0; a < instance.arc_count(); ++a) arcs.push_back({instance.arc(a).tail, instance.arc(a).head, q[a]});
  const auto bf = bellman_ford(instance.node_count(), arcs, s);
  if (bf.negative_cycle) fail(ErrorCode::NonMonotonePerceived, "negative perceived cycle");
  Path p;
  if (bf.dist[t] == kInfinity) return p;
  for (NodeIndex v = t; bf.pred[v] != kNoArc; v = instance.arc(bf.pred[v]).tail) p.push_back(bf.pred[v]);
  std::reverse(p.begin(), p.end());
  return p;
}

double potential_of(const Instance& instance, std::span<const double> arc_flows, const Deviation* dev) {
  double p = 0.0;
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    const double f = arc_flows[a];
    p += instance.arc(a).latency.integral(f);
    if (dev) p += (*dev)[a].integral(f);
  }
  return p;
}

double path_cost(const Path& p, std::span<const double> q) {
  double c = 0.0;
  for (ArcIndex a : p) c += q[a];
  return c;
}

class Solver {
 public:
  Solver(const Instance& instance, const Deviation& deviation, const SolverConfig& config)
      : inst_(instance), dev_(dev_ptr(deviation)), cfg_(config), f_(instance.arc_count(), 0.0), q_(f_.size()),
        mark_(f_.size(), 0), paths_(instance.commodity_count()) {}

  void init_shortest() {
    refresh_all_costs();
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Commodity& k = inst_.commodity(i);
      Path p = shortest(inst_, q_, k.source, k.sink);
      if (p.empty()) fail(ErrorCode::InfeasibleFlow, "sink unreachable for commodity " + std::to_string(i));
      add_flow(p, k.demand);
      paths_[i].push_back({std::move(p), k.demand});
    }
    refresh_all_costs();
  }

  void init_random(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    refresh_all_costs();
    const std::vector<double> base = q_;
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Commodity& k = inst_.commodity(i);
      const std::size_t draws = 1 + rng() % 4;
      std::vector<PathFlow> chosen;
      for (std::size_t d = 0; d < draws; ++d) {
        std::vector<double> w(base.size());
        for (std::size_t a = 0; a < w.size(); ++a) w[a] = unit(rng) * (1.0 + base[a]) + 1e-3;
        Path p = tree_path(inst_, dijkstra(inst_, k.source, w), k.sink);
        if (p.empty()) fail(ErrorCode::InfeasibleFlow, "sink unreachable for commodity " + std::to_string(i));
        const double share = 0.05 + unit(rng);
        auto it = std::find_if(chosen.begin(), chosen.end(), [&](const PathFlow& pf) { return pf.path == p; });
        if (it == chosen.end()) chosen.push_back({std::move(p), share});
        else it->value += share;
      }
      double total = 0.0;
      for (const auto& pf : chosen) total += pf.value;
      double assigned = 0.0;
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        chosen[j].value = j + 1 == chosen.size() ? k.demand - assigned : k.demand * chosen[j].value / total;
        assigned += chosen[j].value;
        add_flow(chosen[j].path, chosen[j].value);
      }
      paths_[i] = std::move(chosen);
    }
    refresh_all_costs();
  }

  EquilibriumResult run() {
    double potential = potential_of(inst_, f_, dev_);
    std::size_t iter = 0;
    for (;; ++iter) {
      const Measure m = measure();
      if (m.gap <= cfg_.relative_gap_tol && m.max_excess <= cfg_.relative_gap_tol * m.max_latency) break;
      if (iter >= cfg_.max_iterations) {
        if (m.gap <= cfg_.relative_gap_tol) break;
        fail(ErrorCode::NotConverged, "relative gap " + std::to_string(m.gap) + " after " + std::to_string(iter) +
                                          " iterations");
      }
      sweep();
      const double next = potential_of(inst_, f_, dev_);
      if (next > potential + 1e-10 * std::max(1.0, std::abs(potential))) {
        fail(ErrorCode::NotConverged, "Beckmann potential increased during descent");
      }
      potential = next;
    }
    std::vector<std::vector<PathFlow>> per(paths_.size());
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      for (const auto& pf : paths_[i]) {
        if (pf.value > 0.0) per[i].push_back(pf);
      }
    }
    EquilibriumResult r{Flow(inst_, std::move(per)), 0.0, iter, potential};
    r.relative_gap = relative_gap(inst_, r.flow, dev_ ? *dev_ : kNoDeviation);
    r.potential_value = potential_of(inst_, r.flow.arc_flows(), dev_);
    return r;
  }

 private:
  struct Measure {
    double gap = 0.0;
    double max_excess = 0.0;
    double max_latency = 0.0;
  };

  Measure measure() const {
    Measure m;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Commodity& k = inst_.commodity(i);
      const double best = path_cost(shortest(inst_, q_, k.source, k.sink), q_);
      double total = 0.0;
      for (const auto& pf : paths_[i]) {
        if (pf.value <= 0.0) continue;
        const double c = path_cost(pf.path, q_);
        total += pf.value * c;
        m.max_excess = std::max(m.max_excess, c - best);
        m.max_latency = std::max(m.max_latency, c);
      }
      num += total - k.demand * best;
      den += k.demand * best;
    }
    num = std::max(num, 0.0);
    m.gap = den > 1e-12 ? num / den : num;
    return m;
  }

  void sweep() {
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Commodity& k = inst_.commodity(i);
      Path target = shortest(inst_, q_, k.source, k.sink);
      auto& ps = paths_[i];
      std::size_t ti = 0;
      while (ti < ps.size() && ps[ti].path != target) ++ti;
      if (ti == ps.size()) {
        if (ps.size() >= cfg_.path_cap) fail(ErrorCode::PathExplosion, "solver path set exceeds path_cap");
        ps.push_back({target, 0.0});
      }
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j == ti || ps[j].value <= 0.0) continue;
        const double cj = path_cost(ps[j].path, q_);
        const double ct = path_cost(ps[ti].path, q_);
        if (cj <= ct) continue;
        shift(ps[j], ps[ti]);
      }
      ps.erase(std::remove_if(ps.begin(), ps.end(), [](const PathFlow& pf) { return pf.value <= 0.0; }), ps.end());
    }
  }

  // Moves t units from `from` to `to`, t minimizing the potential on [0, from.value].
  void shift(PathFlow& from, PathFlow& to) {
    for (ArcIndex a : to.path) mark_[a] += 1;
    for (ArcIndex a : from.path) mark_[a] -= 1;
    plus_.clear();
    minus_.clear();
    for (ArcIndex a : to.path) {
      if (mark_[a] == 1) plus_.push_back(a);
    }
    for (ArcIndex a : from.path) {
      if (mark_[a] == -1) minus_.push_back(a);
    }
    for (ArcIndex a : to.path) mark_[a] = 0;
    for (ArcIndex a : from.path) mark_[a] = 0;

    auto slope = [&](double t) {
      double d = 0.0;
      for (ArcIndex a : plus_) d += perceived(inst_, dev_, a, f_[a] + t);
      for (ArcIndex a : minus_) d -= perceived(inst_, dev_, a, std::max(0.0, f_[a] - t));
      return d;
    };
    const double cap = from.value;
    if (slope(0.0) >= 0.0) return;
    double t;
    if (slope(cap) <= 0.0) {
      t = cap;
    } else {
      double lo = 0.0;
      double hi = cap;
      for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, cap); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) < 0.0) lo = mid;
        else hi = mid;
      }
      t = lo;
    }
    if (t <= 0.0) return;
    for (ArcIndex a : plus_) f_[a] += t;
    for (ArcIndex a : minus_) f_[a] = std::max(0.0, f_[a] - t);
    if (t == cap) {
      from.value = 0.0;
      to.value += cap;
    } else {
      from.value -= t;
      to.value += t;
    }
    for (ArcIndex a : plus_) q_[a] = perceived(inst_, dev_, a, f_[a]);
    for (ArcIndex a : minus_) q_[a] = perceived(inst_, dev_, a, f_[a]);
  }

  void add_flow(const Path& p, double v) {
    for (ArcIndex a : p) f_[a] += v;
  }

  void refresh_all_costs() { q_ = arc_costs(inst_, f_, dev_); }

  const Instance& inst_;
  const Deviation* dev_;
  SolverConfig cfg_;
  std::vector<double> f_;
  std::vector<double> q_;
  std::vector<int> mark_;
  std::vector<ArcIndex> plus_;
  std::vector<ArcIndex> minus_;
  std::vector<std::vector<PathFlow>> paths_;
};

void check_config(const SolverConfig& config) {
  if (!(config.relative_gap_tol > 0.0)) fail(ErrorCode::InvalidInput, "relative_gap_tol must be positive");
  if (config.max_iterations < 1) fail(ErrorCode::InvalidInput, "max_iterations must be at least 1");
}

}  // namespace

void check_perceived_monotone(const Instance& instance, const Deviation& deviation) {
  const Deviation* dev = dev_ptr(deviation);
  if (dev && dev->size() != instance.arc_count()) fail(ErrorCode::InvalidInput, "deviation has the wrong number of arcs");
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    const ScalarFn zero;
    const ScalarFn* fns[] = {&instance.arc(a).latency.fn(), dev ? &(*dev)[a] : &zero};
    double prev = -kInfinity;
    for (double x : merged_sample_grid(instance.total_demand(), fns)) {
      const double q = perceived(instance, dev, a, x);
      const double slack = 1e-12 * std::max(1.0, std::abs(q));
      if (q < -slack) {
        fail(ErrorCode::NonMonotonePerceived, "perceived latency negative on arc " + instance.arc(a).id);
      }
      if (q < prev - slack) {
        fail(ErrorCode::NonMonotonePerceived, "perceived latency decreasing on arc " + instance.arc(a).id);
      }
      prev = q;
    }
  }
}

double beckmann_potential(const Instance& instance, std::span<const double> arc_flows, const Deviation& deviation) {
  return potential_of(instance, arc_flows, dev_ptr(deviation));
}

double relative_gap(const Instance& instance, const Flow& flow, const Deviation& deviation) {
  const auto q = arc_costs(instance, flow.arc_flows(), dev_ptr(deviation));
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < instance.commodity_count(); ++i) {
    const Commodity& k = instance.commodity(i);
    const double best = path_cost(shortest(instance, q, k.source, k.sink), q);
    double total = 0.0;
    for (const auto& pf : flow.paths(i)) total += pf.value * path_cost(pf.path, q);
    num += total - k.demand * best;
    den += k.demand * best;
  }
  num = std::max(num, 0.0);
  return den > 1e-12 ? num / den : num;
}

EquilibriumResult wardrop(const Instance& instance, const Deviation& deviation, const SolverConfig& config) {
  check_config(config);
  check_perceived_monotone(instance, deviation);
  Solver s(instance, deviation, config);
  s.init_shortest();
  return s.run();
}

EquilibriumResult wardrop_randomized(const Instance& instance, const Deviation& deviation, const SolverConfig& config,
                                     std::uint64_t seed) {
  check_config(config);
  check_perceived_monotone(instance, deviation);
  Solver s(instance, deviation, config);
  s.init_random(seed);
  return s.run();
}

double worst_equilibrium_cost(const Instance& instance, const Deviation& deviation, const SolverConfig& config) {
  double worst = social_cost(instance, wardrop(instance, deviation, config).flow);
  std::vector<std::uint64_t> seeds(config.restarts);
  {
    std::mt19937_64 rng(config.seed);
    for (auto& s : seeds) s = rng();
  }
  for (std::uint64_t s : seeds) {
    worst = std::max(worst, social_cost(instance, wardrop_randomized(instance, deviation, config, s).flow));
  }
  return worst;
}

NashReport verify_nash(const Instance& instance, const Flow& flow, const Deviation& deviation, double eps,
                       double support) {
  NashReport report;
  const auto q = arc_costs(instance, flow.arc_flows(), dev_ptr(deviation));
  for (std::size_t i = 0; i < instance.commodity_count(); ++i) {
    const Commodity& k = instance.commodity(i);
    const double best = path_cost(shortest(instance, q, k.source, k.sink), q);
    for (const auto& pf : flow.paths(i)) {
      if (pf.value <= support) continue;
      const double c = path_cost(pf.path, q);
      report.max_excess = std::max(report.max_excess, c - best);
      report.max_path_latency = std::max(report.max_path_latency, c);
      if (c > best + eps) report.violations.push_back({i, pf.path, c, best});
    }
  }
  return report;
}

}  // namespace devratio
