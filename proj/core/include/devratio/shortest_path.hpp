#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "devratio/instance.hpp"

namespace devratio {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kNoArc = std::numeric_limits<std::size_t>::max();

struct ShortestPathTree {
  std::vector<double> dist;        // kInfinity when unreachable
  std::vector<std::size_t> pred;   // incoming arc on the tree, kNoArc at the root
};

/// Dijkstra on the instance graph with non-negative arc costs. Among equally
/// short alternatives the predecessor arc with the smaller index (arc id) wins.
ShortestPathTree dijkstra(const Instance& instance, NodeIndex source, std::span<const double> arc_cost);

/// Reconstructs the tree path to `target`; empty if unreachable or target is the root.
Path tree_path(const Instance& instance, const ShortestPathTree& tree, NodeIndex target);

struct WeightedArc {
  NodeIndex tail = 0;
  NodeIndex head = 0;
  double cost = 0.0;
};

struct BellmanFordResult {
  std::vector<double> dist;
  std::vector<std::size_t> pred;
  /// Arc indices (into the supplied arc list) of a negative cycle, in traversal order.
  std::optional<std::vector<std::size_t>> negative_cycle;
};

/// Bellman-Ford with predecessor-walk cycle extraction. With no source every
/// node starts at distance 0, which detects negative cycles anywhere.
/// Relaxations must improve by more than `eps` to count.
BellmanFordResult bellman_ford(std::size_t node_count, std::span<const WeightedArc> arcs,
                               std::optional<NodeIndex> source, double eps = 1e-12);

}  // namespace devratio
