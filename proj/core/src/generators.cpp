#include "devratio/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "devratio/cost.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/errors.hpp"
#include "devratio/inducibility.hpp"

namespace devratio {

namespace {

std::string arc_name(const std::string& u, const std::string& v) { return u + "-" + v; }
std::string node(const char* prefix, std::size_t j) { return prefix + std::to_string(j); }

struct Builder {
  std::vector<std::string> nodes;
  std::vector<ArcSpec> arcs;
  std::vector<std::pair<std::string, ScalarFn>> deviations;

  void add(const std::string& u, const std::string& v, ScalarFn latency, ScalarFn deviation = ScalarFn::zero()) {
    arcs.push_back({arc_name(u, v), u, v, LatencyFn(std::move(latency))});
    if (!deviation.is_zero()) deviations.emplace_back(arc_name(u, v), std::move(deviation));
  }

  Deviation deviation(const Instance& instance) const {
    Deviation d(instance.arc_count());
    for (const auto& [id, fn] : deviations) d.set(instance.arc_index(id), fn);
    return d;
  }
};

PathFlow route(const Instance& instance, const std::vector<std::string>& nodes, double value) {
  return {path_from_nodes(instance, nodes), value};
}

// Records C(x)/C(z) and checks both equilibria; a failure here is a bug in
// the construction, not in the caller's input.
void finish(GeneratedCase& c) {
  const double cz = social_cost(c.instance, c.z);
  c.observed_ratio = social_cost(c.instance, c.x) / cz;
  const double eps = 1e-9 * std::max(1.0, c.observed_ratio);
  if (!verify_nash(c.instance, c.z, Deviation(), eps, kSupportThreshold).ok()) {
    fail(ErrorCode::ConstructionFailed, c.family + ": z is not a Nash flow");
  }
  if (!verify_nash(c.instance, c.x, c.deviation, eps, kSupportThreshold).ok()) {
    fail(ErrorCode::ConstructionFailed, c.family + ": x is not a Nash flow under the deviation");
  }
}

void check_braess_args(std::size_t m, double beta, double r) {
  if (m < 2) fail(ErrorCode::InvalidInput, "Braess graphs need m >= 2");
  if (!std::isfinite(beta) || beta < 0.0) fail(ErrorCode::InvalidInput, "beta must be non-negative");
  if (!std::isfinite(r) || r < 1.0) fail(ErrorCode::InvalidInput, "r must be at least 1");
}

// G^m with (s,v_j) = (m-j) y, (w_j,t) = j y, unit arcs elsewhere and
// delta = beta on E2 and E3. `sv1` overrides the latency of (s,v_1).
Builder braess_graph(std::size_t m, double beta, const ScalarFn& y, const std::string& t,
                     const ScalarFn* sv1 = nullptr) {
  Builder b;
  b.nodes.push_back("s");
  for (std::size_t j = 1; j < m; ++j) b.nodes.push_back(node("v", j));
  for (std::size_t j = 1; j < m; ++j) b.nodes.push_back(node("w", j));
  b.nodes.push_back(t);
  const ScalarFn one = ScalarFn::constant(1.0);
  const ScalarFn dev = ScalarFn::constant(beta);
  for (std::size_t j = 1; j < m; ++j) {
    const double up = static_cast<double>(m - j);
    b.add("s", node("v", j), j == 1 && sv1 ? *sv1 : y.scaled(up));
    b.add(node("v", j), node("w", j), one);
    b.add(node("w", j), t, y.scaled(static_cast<double>(j)));
  }
  for (std::size_t j = 2; j < m; ++j) b.add(node("v", j), node("w", j - 1), one, dev);
  b.add("v1", t, one, dev);
  b.add("s", node("w", m - 1), one, dev);
  return b;
}

std::vector<PathFlow> braess_z(const Instance& inst, std::size_t m, const std::string& t) {
  const double share = 1.0 / static_cast<double>(m);
  std::vector<PathFlow> paths;
  paths.push_back(route(inst, {"s", node("w", m - 1), t}, share));
  paths.push_back(route(inst, {"s", "v1", t}, share));
  for (std::size_t j = 2; j < m; ++j) paths.push_back(route(inst, {"s", node("v", j), node("w", j - 1), t}, share));
  return paths;
}

std::vector<PathFlow> braess_x(const Instance& inst, std::size_t m, const std::string& t, double share) {
  std::vector<PathFlow> paths;
  for (std::size_t j = 1; j < m; ++j) paths.push_back(route(inst, {"s", node("v", j), node("w", j), t}, share));
  return paths;
}

// Euclidean projection onto {v >= 0, sum v = 1}.
void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double acc = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    acc += u[k];
    const double t = (acc - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  for (double& x : v) x = std::max(0.0, x - tau);
}

}  // namespace

double fibonacci_number(std::size_t k) {
  double a = 0.0;
  double b = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double next = a + b;
    a = b;
    b = next;
  }
  return a;
}

GeneratedCase braess(std::size_t m, double beta) {
  check_braess_args(m, beta, 1.0);
  const double md = static_cast<double>(m);
  const ScalarFn y = ScalarFn::ramp(1.0 / md, 1.0 / (md - 1.0), beta);
  Builder b = braess_graph(m, beta, y, "t");
  Instance inst(b.nodes, b.arcs, {{"s", "t", 1.0}}, ThresholdPair::alpha_beta(0.0, beta));
  Deviation dev = b.deviation(inst);
  Flow z(inst, {braess_z(inst, m, "t")});
  Flow x(inst, {braess_x(inst, m, "t", 1.0 / (md - 1.0))});
  GeneratedCase c{std::move(inst), std::move(dev), std::move(z), std::move(x), 1.0 + beta * md, 0.0, "braess"};
  finish(c);
  return c;
}

GeneratedCase braess_odd(std::size_t m, double beta, double r) {
  check_braess_args(m, beta, r);
  if (r == 1.0) {
    GeneratedCase c = braess(m, beta);
    c.family = "braess-odd";
    return c;
  }
  const double md = static_cast<double>(m);
  const double eps = 1.0 / (2.0 * md);
  const ScalarFn y = ScalarFn::ramp(1.0 / md, (1.0 - eps) / (md - 1.0), beta);
  Builder b = braess_graph(m, beta, y, "t1");
  b.nodes.push_back("t2");
  b.add("s", "t2", ScalarFn::ramp(r - 1.0, r - 1.0 + eps, beta).scaled(md));
  b.add("t2", "t1", ScalarFn::constant(1.0));
  Instance inst(b.nodes, b.arcs, {{"s", "t1", 1.0}, {"s", "t2", r - 1.0}}, ThresholdPair::alpha_beta(0.0, beta));
  Deviation dev = b.deviation(inst);
  Flow z(inst, {braess_z(inst, m, "t1"), {route(inst, {"s", "t2"}, r - 1.0)}});
  auto x1 = braess_x(inst, m, "t1", (1.0 - eps) / (md - 1.0));
  x1.push_back(route(inst, {"s", "t2", "t1"}, eps));
  Flow x(inst, {std::move(x1), {route(inst, {"s", "t2"}, r - 1.0)}});
  GeneratedCase c{std::move(inst), std::move(dev), std::move(z), std::move(x), 1.0 + beta * r * md, 0.0,
                  "braess-odd"};
  finish(c);
  return c;
}

GeneratedCase braess_even(std::size_t m, double beta, double r) {
  check_braess_args(m, beta, r);
  if (r == 1.0) {
    GeneratedCase c = braess(m, beta);
    c.family = "braess-even";
    return c;
  }
  const double md = static_cast<double>(m);
  const ScalarFn y = ScalarFn::ramp(1.0 / md, 1.0 / (md - 1.0), beta);
  const ScalarFn y_prime = ScalarFn::ramp(1.0 / md + r - 1.0, 1.0 / (md - 1.0) + r - 1.0, beta).scaled(md - 1.0);
  Builder b = braess_graph(m, beta, y, "t", &y_prime);
  Instance inst(b.nodes, b.arcs, {{"s", "t", 1.0}, {"s", "v1", r - 1.0}}, ThresholdPair::alpha_beta(0.0, beta));
  Deviation dev = b.deviation(inst);
  Flow z(inst, {braess_z(inst, m, "t"), {route(inst, {"s", "v1"}, r - 1.0)}});
  Flow x(inst, {braess_x(inst, m, "t", 1.0 / (md - 1.0)), {route(inst, {"s", "v1"}, r - 1.0)}});
  GeneratedCase c{std::move(inst), std::move(dev), std::move(z), std::move(x),
                  1.0 + beta * r * md - beta * (r - 1.0), 0.0, "braess-even"};
  finish(c);
  return c;
}

GeneratedCase fibonacci(std::size_t p, double beta, double ramp_delta) {
  if (p < 3 || p % 2 == 0) fail(ErrorCode::InvalidInput, "p must be odd and at least 3");
  if (!std::isfinite(beta) || beta < 0.0) fail(ErrorCode::InvalidInput, "beta must be non-negative");
  if (!std::isfinite(ramp_delta) || ramp_delta <= 0.0) fail(ErrorCode::InvalidInput, "ramp_delta must be positive");

  Builder b;
  b.nodes = {"s1", "s2", "t1", "t2", "e"};
  for (std::size_t i = 0; i <= p; ++i) b.nodes.push_back(node("w", i));
  for (std::size_t i = 1; i <= p; ++i) b.nodes.push_back(node("v", i));

  // Rung i rises from 0 at flow 1 to beta F_i at flow 1 + ramp_delta. The
  // bottom rung (w0,w1) uses F_1.
  auto rung = [&](std::size_t i) {
    return ScalarFn::capped_ramp(1.0, 1.0 + ramp_delta, beta * fibonacci_number(std::max<std::size_t>(i, 1)));
  };
  const ScalarFn one = ScalarFn::constant(1.0);
  const ScalarFn zero = ScalarFn::zero();

  b.add("s1", "e", one, ScalarFn::constant(beta));
  b.add("s1", "w0", one);
  b.add("e", "w1", zero);
  b.add("w1", "v1", zero);
  for (std::size_t i = 1; i < p; ++i) b.add(node("v", i), node("v", i + 1), i % 2 == 1 ? rung(i) : zero);
  b.add(node("v", p), "t1", zero);
  b.add("s2", "w0", zero);
  for (std::size_t i = 0; i < p; ++i) b.add(node("w", i), node("w", i + 1), i % 2 == 0 ? rung(i) : zero);
  b.add(node("w", p), "t2", zero);
  for (std::size_t i = 1; i + 2 <= p; i += 2) b.add("s2", node("v", i), zero);
  for (std::size_t i = 2; i < p; i += 2) b.add("e", node("w", i), zero);
  for (std::size_t i = 3; i <= p; i += 2) b.add(node("w", i), node("v", i), zero);
  for (std::size_t i = 2; i < p; i += 2) b.add(node("v", i), node("w", i), zero);

  Instance inst(b.nodes, b.arcs, {{"s1", "t1", 1.0}, {"s2", "t2", 1.0}}, ThresholdPair::alpha_beta(0.0, beta));
  Deviation dev = b.deviation(inst);

  auto v_line = [&](std::vector<std::string> prefix, std::size_t from) {
    for (std::size_t i = from; i <= p; ++i) prefix.push_back(node("v", i));
    prefix.push_back("t1");
    return prefix;
  };
  auto w_line = [&](std::vector<std::string> prefix, std::size_t from) {
    for (std::size_t i = from; i <= p; ++i) prefix.push_back(node("w", i));
    prefix.push_back("t2");
    return prefix;
  };

  Flow z(inst, {{route(inst, v_line({"s1", "e", "w1"}, 1), 1.0)}, {route(inst, w_line({"s2"}, 0), 1.0)}});

  // Commodity 1: a = (T_0, T_2, T_4, ..., T_{p-1}).
  // Commodity 2: b = (T_1, T_3, ..., T_{p-2}, P_2).
  const std::size_t q = (p - 1) / 2;
  const std::size_t na = q + 1;
  const std::size_t nb = q + 1;
  const std::size_t bp = q;  // index of P_2 within b
  std::vector<std::vector<double>> rows;
  {
    std::vector<double> r(na + nb, 0.0);
    r[0] = 1.0;
    r[na + bp] = 1.0;
    rows.push_back(r);  // (w0,w1)
  }
  for (std::size_t k = 1; k <= q; ++k) {  // (w_i,w_{i+1}), i = 2k
    std::vector<double> r(na + nb, 0.0);
    r[k] = 1.0;
    for (std::size_t j = 0; j < k; ++j) r[na + j] = 1.0;  // T_{2j+1} with 2j+1 < 2k
    r[na + bp] = 1.0;
    rows.push_back(r);
  }
  for (std::size_t j = 0; j < q; ++j) {  // (v_i,v_{i+1}), i = 2j+1
    std::vector<double> r(na + nb, 0.0);
    r[na + j] = 1.0;
    r[0] = 1.0;
    for (std::size_t k = 1; k <= j; ++k) r[k] = 1.0;  // T_{2k} with 2k <= i-1
    rows.push_back(r);
  }

  const double need = 1.0 + ramp_delta;
  const double target = need + 0.25 * ramp_delta;
  std::vector<double> a(na, 1.0 / static_cast<double>(q));
  a[0] = 0.0;
  std::vector<double> bv(nb, 1.0 / static_cast<double>(nb));
  auto dot = [&](const std::vector<double>& r) {
    double s = 0.0;
    for (std::size_t k = 0; k < na; ++k) s += r[k] * a[k];
    for (std::size_t k = 0; k < nb; ++k) s += r[na + k] * bv[k];
    return s;
  };
  bool ok = false;
  for (std::size_t it = 0; it < 200000 && !ok; ++it) {
    for (const auto& r : rows) {
      const double gap = target - dot(r);
      if (gap <= 0.0) continue;
      const double norm2 = std::accumulate(r.begin(), r.end(), 0.0);  // 0/1 entries
      for (std::size_t k = 0; k < na; ++k) a[k] += gap / norm2 * r[k];
      for (std::size_t k = 0; k < nb; ++k) bv[k] += gap / norm2 * r[na + k];
    }
    project_simplex(a);
    project_simplex(bv);
    ok = std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return dot(r) >= need + 1e-3 * ramp_delta; });
  }
  if (!ok) fail(ErrorCode::NoValidSplit, "no split of x keeps every rung at or above 1 + ramp_delta");

  std::vector<PathFlow> x1;
  std::vector<PathFlow> x2;
  x1.push_back(route(inst, v_line({"s1", "w0", "w1"}, 1), a[0]));
  for (std::size_t k = 1; k <= q; ++k) {
    const std::size_t i = 2 * k;
    x1.push_back(route(inst, v_line({"s1", "e", node("w", i), node("w", i + 1)}, i + 1), a[k]));
  }
  for (std::size_t j = 0; j < q; ++j) {
    const std::size_t i = 2 * j + 1;
    x2.push_back(route(inst, w_line({"s2", node("v", i), node("v", i + 1)}, i + 1), bv[j]));
  }
  x2.push_back(route(inst, w_line({"s2"}, 0), bv[bp]));
  Flow x(inst, {std::move(x1), std::move(x2)});

  GeneratedCase c{std::move(inst), std::move(dev), std::move(z), std::move(x),
                  1.0 + beta * fibonacci_number(p + 1), 0.0, "fibonacci"};
  finish(c);
  return c;
}

SmoothnessCase smoothness_tight(const LatencyFn& c, double beta, double r, double epsilon) {
  if (!std::isfinite(beta) || beta < 0.0) fail(ErrorCode::InvalidInput, "beta must be non-negative");
  if (!std::isfinite(r) || r <= 0.0) fail(ErrorCode::InvalidInput, "r must be positive");
  if (!(epsilon > 0.0 && epsilon < r)) fail(ErrorCode::InvalidInput, "epsilon must lie in (0, r)");
  const double cr = c(r);
  if (!(cr > 0.0)) fail(ErrorCode::InvalidInput, "c(r) must be positive");

  std::vector<ArcSpec> arcs = {
      {"fixed", "s", "t", LatencyFn::constant(1.0 / r)},
      {"scaled", "s", "t", LatencyFn(c.fn().scaled((1.0 + beta) / (r * cr)))},
  };
  Instance inst({"s", "t"}, std::move(arcs), {{"s", "t", r}}, ThresholdPair::alpha_beta(0.0, beta));
  const ArcIndex fixed = inst.arc_index("fixed");
  const ArcIndex scaled = inst.arc_index("scaled");
  Deviation dev(inst.arc_count());
  dev.set(fixed, ScalarFn::constant(beta / r));
  Flow x(inst, {{PathFlow{{scaled}, r}}});
  Flow zs(inst, {{PathFlow{{scaled}, epsilon}, PathFlow{{fixed}, r - epsilon}}});
  SmoothnessCase out{std::move(inst), std::move(dev), std::move(x), std::move(zs), 0.0, 0.0, 0.0};
  out.cost_x = social_cost(out.instance, out.x);
  out.cost_z_star = social_cost(out.instance, out.z_star);
  out.ratio = out.cost_x / out.cost_z_star;
  return out;
}

double smoothness_tight_sup(const LatencyFn& c, double beta, double r, std::size_t samples) {
  if (samples < 3) fail(ErrorCode::InvalidInput, "need at least 3 samples");
  const double cr = c(r);
  if (!(cr > 0.0)) fail(ErrorCode::InvalidInput, "c(r) must be positive");
  auto ratio = [&](double eps) {
    const double cz = (r - eps) / r + eps * (1.0 + beta) * c(eps) / (r * cr);
    return (1.0 + beta) / cz;
  };
  const double h = r / static_cast<double>(samples + 1);
  std::size_t best = 1;
  for (std::size_t k = 2; k <= samples; ++k) {
    if (ratio(h * static_cast<double>(k)) > ratio(h * static_cast<double>(best))) best = k;
  }
  double lo = h * static_cast<double>(best - 1);
  double hi = h * static_cast<double>(best + 1);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double m1 = hi - g * (hi - lo);
    const double m2 = lo + g * (hi - lo);
    if (ratio(m1) < ratio(m2)) lo = m1;
    else hi = m2;
  }
  const double mid = 0.5 * (lo + hi);
  return std::max(ratio(mid), ratio(h * static_cast<double>(best)));
}

Digraph directed_path(std::size_t n) {
  Digraph g;
  for (std::size_t i = 0; i < n; ++i) g.nodes.push_back(std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) g.arcs.emplace_back(g.nodes[i], g.nodes[i + 1]);
  return g;
}

Digraph out_star(std::size_t n) {
  Digraph g;
  for (std::size_t i = 0; i < n; ++i) g.nodes.push_back(std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) g.arcs.emplace_back(g.nodes[0], g.nodes[i]);
  return g;
}

Digraph complete_digraph(std::size_t n) {
  Digraph g;
  for (std::size_t i = 0; i < n; ++i) g.nodes.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) g.arcs.emplace_back(g.nodes[i], g.nodes[j]);
    }
  }
  return g;
}

Instance hamiltonian_reduction(const Digraph& graph, const std::string& s, const std::string& t) {
  if (s == t) fail(ErrorCode::InvalidInput, "s and t must differ");
  const double cap = static_cast<double>(graph.nodes.size()) - 1.0;
  std::vector<ArcSpec> arcs;
  std::vector<ThresholdPair::PerArc> th;
  for (const auto& [u, v] : graph.arcs) {
    if (u == v) fail(ErrorCode::InvalidInput, "self-loop at " + u);
    arcs.push_back({arc_name(u, v), u, v, LatencyFn::linear()});
    th.push_back({arc_name(u, v), ScalarFn::zero(), ScalarFn::constant(cap)});
  }
  return Instance(graph.nodes, std::move(arcs), {{s, t, 1.0}}, ThresholdPair::per_arc(std::move(th)));
}

std::pair<Instance, Flow> remark_b1_counterexample() {
  const std::vector<std::string> nodes = {"s1", "v1", "1", "2", "t1", "s2", "v2", "3", "4", "t2"};
  const LatencyFn zero;
  std::vector<ArcSpec> arcs = {
      {arc_name("s1", "v1"), "s1", "v1", zero}, {arc_name("v1", "1"), "v1", "1", zero},
      {arc_name("1", "2"), "1", "2", LatencyFn::constant(1.0)}, {arc_name("2", "t1"), "2", "t1", zero},
      {arc_name("s2", "v2"), "s2", "v2", zero}, {arc_name("v2", "3"), "v2", "3", zero},
      {arc_name("3", "4"), "3", "4", LatencyFn::constant(3.0)}, {arc_name("4", "t2"), "4", "t2", zero},
      {arc_name("3", "2"), "3", "2", zero}, {arc_name("1", "4"), "1", "4", zero},
  };
  auto th = ThresholdPair::per_arc({
      {arc_name("1", "4"), ScalarFn::zero(), ScalarFn::constant(2.0)},
      {arc_name("3", "2"), ScalarFn::zero(), ScalarFn::constant(1.0)},
  });
  Instance inst(nodes, std::move(arcs), {{"s1", "t1", 1.0}, {"s2", "t2", 1.0}}, std::move(th));
  Flow f(inst, {{route(inst, {"s1", "v1", "1", "2", "t1"}, 1.0)}, {route(inst, {"s2", "v2", "3", "4", "t2"}, 1.0)}});
  return {std::move(inst), std::move(f)};
}

}  // namespace devratio
