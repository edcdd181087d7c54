#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "devratio/instance.hpp"

namespace devratio {

inline constexpr double kFlowCompareTol = 1e-10;

/// Z = {a : z_a >= x_a and z_a > 0}, X = the rest. Arcs with z_a = x_a = 0
/// are in X and additionally marked removable.
struct XZPartition {
  std::vector<bool> in_z;
  std::vector<bool> removable;

  bool is_z(ArcIndex a) const { return in_z.at(a); }
  bool is_x(ArcIndex a) const { return !in_z.at(a); }
};

/// Throws InvalidInput if the flows do not belong to the same instance shape.
XZPartition partition_xz(const Flow& x, const Flow& z);

enum class Orientation { ZForward, XBackward };

struct TreeEdge {
  ArcIndex arc = 0;
  Orientation orientation = Orientation::ZForward;
};

struct AltPathTree {
  NodeIndex root = 0;
  std::vector<bool> in_tree;
  /// Edge through which each tree node was reached (absent for the root and
  /// for nodes outside the tree).
  std::vector<std::optional<TreeEdge>> parent;
  /// Alternating s -> t_i path of every commodity, in order from s.
  std::vector<std::vector<TreeEdge>> paths;
  /// Number of maximal runs of consecutive Z arcs on each path.
  std::vector<std::size_t> eta;
};

/// Grows a cut from {s} on the graph with a super sink, always crossing with
/// the lowest-id admissible arc: a Z arc leaving the cut or an X arc entering
/// it. Throws NotCommonSource, ConstructionFailed.
AltPathTree build_alt_path_tree(const Instance& instance, const Flow& x, const Flow& z);

/// Maximal runs of Z arcs on an alternating path.
std::size_t count_z_segments(const std::vector<TreeEdge>& path);

/// Tree rendering: Z arcs solid and bold, X arcs dashed.
std::string alt_path_tree_to_dot(const Instance& instance, const AltPathTree& tree);

struct GeneralBound {
  double value = 0.0;
  double cost_x = 0.0;
  double cost_z = 0.0;
  std::vector<Path> x_paths;  // X_i per commodity
  bool x_inducible = true;
  bool z_nash = true;
  std::vector<std::string> notes;
};

/// C(z) + sum_i r_i (sum_{Z on pi_i} theta_max(z_a) - sum_{X on pi_i} theta_min(z_a)
///                   - sum_{a in X_i} theta_min(x_a)),
/// with X_i the path of commodity i over its support arcs maximizing l_P(x).
/// The formula is evaluated for any flows; inputs that are not an inducible x
/// and a Nash z are flagged.
GeneralBound bound_general(const Instance& instance, const Flow& x, const Flow& z, const AltPathTree& tree,
                           std::size_t path_cap = 10000);

struct AlphaBetaBound {
  double fine = 0.0;
  double coarse = 0.0;
};

/// fine = 1 + (beta - alpha)/(1 + alpha) * sum_i r_i eta_i,
/// coarse = 1 + (beta - alpha)/(1 + alpha) * ceil((n - 1)/2) * sum_i r_i.
AlphaBetaBound bound_alpha_beta(std::size_t node_count, double alpha, double beta,
                                const std::vector<std::size_t>& etas, const std::vector<double>& demands);
AlphaBetaBound bound_alpha_beta(const Instance& instance, double alpha, double beta,
                                const std::vector<std::size_t>& etas);

/// (alpha, beta) -> (0, (beta - alpha)/(1 + alpha)). Throws AlphaOutOfRange.
std::pair<double, double> normalize_thresholds(double alpha, double beta);

/// ceil((n - 1) / 2).
std::size_t half_ceil(std::size_t node_count);

}  // namespace devratio
