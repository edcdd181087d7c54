#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's path enumeration, shortest paths or auxiliary graph.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "devratio/instance.hpp"

namespace oracle {

using devratio::ArcIndex;
using devratio::Deviation;
using devratio::Flow;
using devratio::Instance;
using devratio::NodeIndex;
using devratio::Path;

inline std::vector<Path> simple_paths(const Instance& inst, NodeIndex s, NodeIndex t) {
  std::vector<Path> out;
  std::vector<bool> seen(inst.node_count(), false);
  Path cur;
  std::function<void(NodeIndex)> dfs = [&](NodeIndex v) {
    if (v == t) {
      out.push_back(cur);
      return;
    }
    seen[v] = true;
    for (std::size_t a = 0; a < inst.arc_count(); ++a) {
      if (inst.arc(a).tail != v || seen[inst.arc(a).head]) continue;
      cur.push_back(a);
      dfs(inst.arc(a).head);
      cur.pop_back();
    }
    seen[v] = false;
  };
  dfs(s);
  return out;
}

inline double perceived_path(const Instance& inst, const Flow& f, const Path& p, const Deviation* d) {
  double c = 0.0;
  for (ArcIndex a : p) {
    const double x = f.arc_flow(a);
    c += inst.arc(a).latency(x);
    if (d && d->size()) c += (*d)[a](x);
  }
  return c;
}

/// Wardrop condition checked against every simple path.
inline bool nash_by_enumeration(const Instance& inst, const Flow& f, const Deviation* d, double eps) {
  for (std::size_t i = 0; i < inst.commodity_count(); ++i) {
    const auto& k = inst.commodity(i);
    double best = std::numeric_limits<double>::infinity();
    for (const Path& p : simple_paths(inst, k.source, k.sink)) best = std::min(best, perceived_path(inst, f, p, d));
    for (const auto& pf : f.paths(i)) {
      if (pf.value > 1e-10 && perceived_path(inst, f, pf.path, d) > best + eps) return false;
    }
  }
  return true;
}

struct Cycle {
  std::vector<NodeIndex> nodes;  // closed walk without repeating the start
  double cost = 0.0;
};

/// Every simple cycle of the graph with arcs a=(u,v) at cost l+theta_max and,
/// for f_a > 1e-10, (v,u) at cost -l-theta_min. Each cycle is reported once,
/// starting at its smallest node.
inline std::vector<Cycle> aux_cycles(const Instance& inst, const Flow& f) {
  struct E {
    NodeIndex u, v;
    double c;
  };
  std::vector<E> edges;
  for (std::size_t a = 0; a < inst.arc_count(); ++a) {
    const auto& arc = inst.arc(a);
    const double x = f.arc_flow(a);
    const double l = arc.latency(x);
    edges.push_back({arc.tail, arc.head, l + inst.theta_max(a, x)});
    if (x > 1e-10) edges.push_back({arc.head, arc.tail, -l - inst.theta_min(a, x)});
  }
  std::vector<Cycle> out;
  const std::size_t n = inst.node_count();
  for (NodeIndex start = 0; start < n; ++start) {
    std::vector<bool> on(n, false);
    std::vector<NodeIndex> stack{start};
    on[start] = true;
    std::function<void(NodeIndex, double)> dfs = [&](NodeIndex v, double cost) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].u != v) continue;
        const NodeIndex w = edges[e].v;
        if (w == start) {
          out.push_back({stack, cost + edges[e].c});
        } else if (w > start && !on[w]) {
          on[w] = true;
          stack.push_back(w);
          dfs(w, cost + edges[e].c);
          stack.pop_back();
          on[w] = false;
        }
      }
    };
    dfs(start, 0.0);
  }
  return out;
}

inline double min_cycle_cost(const std::vector<Cycle>& cycles) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cycles) best = std::min(best, c.cost);
  return best;
}

/// Equilibrium split of demand r over parallel arcs a1 x + b1 and a2 x + b2
/// (a1 + a2 > 0). Returns the flow on the first arc.
inline double parallel_affine_split(double a1, double b1, double a2, double b2, double r) {
  const double x = (b2 - b1 + a2 * r) / (a1 + a2);
  return std::clamp(x, 0.0, r);
}

inline double fibonacci_binet(std::size_t k) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  return std::round(std::pow(phi, static_cast<double>(k)) / std::sqrt(5.0));
}

}  // namespace oracle
