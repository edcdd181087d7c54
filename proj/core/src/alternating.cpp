#include "devratio/alternating.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "devratio/cost.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/errors.hpp"
#include "devratio/inducibility.hpp"
#include "devratio/shortest_path.hpp"

namespace devratio {

XZPartition partition_xz(const Flow& x, const Flow& z) {
  const auto xf = x.arc_flows();
  const auto zf = z.arc_flows();
  if (xf.size() != zf.size() || x.commodity_count() != z.commodity_count() || xf.empty()) {
    fail(ErrorCode::InvalidInput, "flows x and z must be feasible flows of the same instance");
  }
  XZPartition p;
  p.in_z.resize(xf.size());
  p.removable.resize(xf.size());
  for (std::size_t a = 0; a < xf.size(); ++a) {
    p.in_z[a] = zf[a] > kFlowCompareTol && zf[a] >= xf[a] - kFlowCompareTol;
    p.removable[a] = zf[a] <= kFlowCompareTol && xf[a] <= kFlowCompareTol;
  }
  return p;
}

std::size_t count_z_segments(const std::vector<TreeEdge>& path) {
  std::size_t runs = 0;
  bool in_run = false;
  for (const auto& e : path) {
    const bool z = e.orientation == Orientation::ZForward;
    if (z && !in_run) ++runs;
    in_run = z;
  }
  return runs;
}

AltPathTree build_alt_path_tree(const Instance& instance, const Flow& x, const Flow& z) {
  if (!instance.common_source()) fail(ErrorCode::NotCommonSource, "alternating path trees need a common source");
  const XZPartition part = partition_xz(x, z);
  const std::size_t n = instance.node_count();
  const std::size_t m = instance.arc_count();
  const NodeIndex sink = n;  // super sink
  const NodeIndex s = instance.commodity(0).source;

  struct Edge {
    NodeIndex tail;
    NodeIndex head;
    bool z;
  };
  std::vector<Edge> edges;
  edges.reserve(m + instance.commodity_count());
  for (std::size_t a = 0; a < m; ++a) edges.push_back({instance.arc(a).tail, instance.arc(a).head, part.in_z[a]});
  for (const auto& k : instance.commodities()) edges.push_back({k.sink, sink, true});

  std::vector<bool> in_s(n + 1, false);
  std::vector<std::optional<std::size_t>> via(n + 1);
  in_s[s] = true;
  for (;;) {
    std::optional<std::size_t> pick;
    for (std::size_t e = 0; e < edges.size() && !pick; ++e) {
      if (e < m && part.removable[e]) continue;
      const Edge& ed = edges[e];
      if (ed.z ? (in_s[ed.tail] && !in_s[ed.head]) : (in_s[ed.head] && !in_s[ed.tail])) pick = e;
    }
    if (!pick) break;
    const Edge& ed = edges[*pick];
    const NodeIndex added = ed.z ? ed.head : ed.tail;
    in_s[added] = true;
    via[added] = *pick;
  }

  AltPathTree tree;
  tree.root = s;
  tree.in_tree.assign(in_s.begin(), in_s.begin() + static_cast<std::ptrdiff_t>(n));
  tree.parent.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    if (!via[v]) continue;
    const std::size_t e = *via[v];
    if (e >= m) fail(ErrorCode::ConstructionFailed, "super-sink arc used as an interior tree arc");
    tree.parent[v] = TreeEdge{e, edges[e].z ? Orientation::ZForward : Orientation::XBackward};
  }
  for (std::size_t i = 0; i < instance.commodity_count(); ++i) {
    const NodeIndex t = instance.commodity(i).sink;
    if (!in_s[t]) {
      fail(ErrorCode::ConstructionFailed, "sink of commodity " + std::to_string(i) + " not reached by the cut");
    }
    std::vector<TreeEdge> path;
    for (NodeIndex v = t; v != s;) {
      const TreeEdge& e = *tree.parent[v];
      path.push_back(e);
      const Arc& arc = instance.arc(e.arc);
      v = e.orientation == Orientation::ZForward ? arc.tail : arc.head;
      if (path.size() > n) fail(ErrorCode::ConstructionFailed, "parent map contains a cycle");
    }
    std::reverse(path.begin(), path.end());
    tree.eta.push_back(count_z_segments(path));
    tree.paths.push_back(std::move(path));
  }
  return tree;
}

std::string alt_path_tree_to_dot(const Instance& instance, const AltPathTree& tree) {
  std::ostringstream os;
  os << "digraph tree {\n  rankdir=LR;\n";
  for (NodeIndex v = 0; v < instance.node_count(); ++v) {
    if (tree.in_tree[v]) os << "  \"" << instance.node_id(v) << "\";\n";
  }
  for (NodeIndex v = 0; v < instance.node_count(); ++v) {
    if (!tree.parent[v]) continue;
    const TreeEdge& e = *tree.parent[v];
    const Arc& a = instance.arc(e.arc);
    os << "  \"" << instance.node_id(a.tail) << "\" -> \"" << instance.node_id(a.head) << "\" [label=\"" << a.id
       << "\", style=" << (e.orientation == Orientation::ZForward ? "bold" : "dashed") << "];\n";
  }
  os << "}\n";
  return os.str();
}

GeneralBound bound_general(const Instance& instance, const Flow& x, const Flow& z, const AltPathTree& tree,
                           std::size_t path_cap) {
  GeneralBound b;
  b.cost_x = social_cost(instance, x);
  b.cost_z = social_cost(instance, z);
  b.value = b.cost_z;
  const XZPartition part = partition_xz(x, z);
  for (std::size_t i = 0; i < instance.commodity_count(); ++i) {
    const auto xi = x.commodity_arc_flows(i);
    Path best;
    double best_latency = -kInfinity;
    for (const Path& p : enumerate_paths(instance, i, path_cap)) {
      if (!std::all_of(p.begin(), p.end(), [&](ArcIndex a) { return xi[a] > kSupportThreshold; })) continue;
      const double l = path_latency(instance, x, p);
      if (l > best_latency) {
        best_latency = l;
        best = p;
      }
    }
    if (best.empty()) fail(ErrorCode::InvalidInput, "commodity without a flow-carrying path in x");
    double term = 0.0;
    for (const TreeEdge& e : tree.paths.at(i)) {
      const double za = z.arc_flow(e.arc);
      if (part.is_z(e.arc)) term += instance.theta_max(e.arc, za);
      else term -= instance.theta_min(e.arc, za);
    }
    for (ArcIndex a : best) term -= instance.theta_min(a, x.arc_flow(a));
    b.value += instance.commodity(i).demand * term;
    b.x_paths.push_back(std::move(best));
  }
  if (instance.common_source()) {
    b.x_inducible = is_inducible(instance, x).inducible;
    if (!b.x_inducible) b.notes.push_back("x is not inducible under the instance thresholds");
  }
  const NashReport zr = verify_nash(instance, z, Deviation(), 1e-7 * std::max(1.0, b.cost_z), kSupportThreshold);
  b.z_nash = zr.ok();
  if (!b.z_nash) b.notes.push_back("z is not a Nash flow without deviations");
  return b;
}

std::size_t half_ceil(std::size_t node_count) { return node_count / 2; }

std::pair<double, double> normalize_thresholds(double alpha, double beta) {
  if (!std::isfinite(alpha) || !(alpha > -1.0) || alpha > 0.0) {
    fail(ErrorCode::AlphaOutOfRange, "alpha must satisfy -1 < alpha <= 0");
  }
  if (!std::isfinite(beta) || beta < 0.0) fail(ErrorCode::InvalidInput, "beta must be non-negative");
  return {0.0, (beta - alpha) / (1.0 + alpha)};
}

AlphaBetaBound bound_alpha_beta(std::size_t node_count, double alpha, double beta,
                                const std::vector<std::size_t>& etas, const std::vector<double>& demands) {
  const double factor = normalize_thresholds(alpha, beta).second;
  if (!etas.empty() && etas.size() != demands.size()) {
    fail(ErrorCode::InvalidInput, "eta and demand lists differ in length");
  }
  double weighted = 0.0;
  double r = 0.0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    r += demands[i];
    if (!etas.empty()) weighted += demands[i] * static_cast<double>(etas[i]);
  }
  AlphaBetaBound b;
  b.fine = 1.0 + factor * weighted;
  b.coarse = 1.0 + factor * static_cast<double>(half_ceil(node_count)) * r;
  return b;
}

AlphaBetaBound bound_alpha_beta(const Instance& instance, double alpha, double beta,
                                const std::vector<std::size_t>& etas) {
  std::vector<double> demands;
  for (const auto& k : instance.commodities()) demands.push_back(k.demand);
  return bound_alpha_beta(instance.node_count(), alpha, beta, etas, demands);
}

}  // namespace devratio
