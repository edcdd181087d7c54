#include "devratio/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace devratio {

ShortestPathTree dijkstra(const Instance& instance, NodeIndex source, std::span<const double> arc_cost) {
  const std::size_t n = instance.node_count();
  ShortestPathTree t{std::vector<double>(n, kInfinity), std::vector<std::size_t>(n, kNoArc)};
  std::vector<bool> done(n, false);
  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  t.dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (done[u] || d > t.dist[u]) continue;
    done[u] = true;
    for (ArcIndex a : instance.out_arcs(u)) {
      const NodeIndex v = instance.arc(a).head;
      if (done[v]) continue;
      const double nd = d + arc_cost[a];
      const double slack = 1e-13 * std::max(1.0, std::abs(nd));
      if (nd < t.dist[v] - slack) {
        t.dist[v] = nd;
        t.pred[v] = a;
        pq.push({nd, v});
      } else if (nd <= t.dist[v] + slack && a < t.pred[v]) {
        t.pred[v] = a;
      }
    }
  }
  return t;
}

Path tree_path(const Instance& instance, const ShortestPathTree& tree, NodeIndex target) {
  Path p;
  if (tree.dist[target] == kInfinity) return p;
  NodeIndex v = target;
  while (tree.pred[v] != kNoArc) {
    p.push_back(tree.pred[v]);
    v = instance.arc(tree.pred[v]).tail;
  }
  std::reverse(p.begin(), p.end());
  return p;
}

BellmanFordResult bellman_ford(std::size_t node_count, std::span<const WeightedArc> arcs,
                               std::optional<NodeIndex> source, double eps) {
  BellmanFordResult r;
  r.dist.assign(node_count, source ? kInfinity : 0.0);
  r.pred.assign(node_count, kNoArc);
  if (source) r.dist[*source] = 0.0;
  std::optional<NodeIndex> touched;
  for (std::size_t iter = 0; iter < node_count; ++iter) {
    touched.reset();
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const auto& a = arcs[k];
      if (r.dist[a.tail] == kInfinity) continue;
      const double nd = r.dist[a.tail] + a.cost;
      if (nd < r.dist[a.head] - eps) {
        r.dist[a.head] = nd;
        r.pred[a.head] = k;
        touched = a.head;
      }
    }
    if (!touched) return r;
  }
  // Still relaxing after |V| rounds: walk back |V| steps to land on the cycle.
  NodeIndex v = *touched;
  for (std::size_t i = 0; i < node_count; ++i) v = arcs[r.pred[v]].tail;
  std::vector<std::size_t> cycle;
  NodeIndex u = v;
  do {
    const std::size_t k = r.pred[u];
    cycle.push_back(k);
    u = arcs[k].tail;
  } while (u != v);
  std::reverse(cycle.begin(), cycle.end());
  r.negative_cycle = std::move(cycle);
  return r;
}

}  // namespace devratio
