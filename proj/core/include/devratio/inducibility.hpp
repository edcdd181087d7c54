#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "devratio/instance.hpp"

namespace devratio {

inline constexpr double kSupportThreshold = 1e-10;

struct AuxArc {
  NodeIndex tail = 0;
  NodeIndex head = 0;
  ArcIndex original = 0;
  bool reversed = false;
  double cost = 0.0;
};

/// Forward copies of every arc with cost l_a(f_a) + theta_max_a(f_a), plus a
/// reversed copy of every support arc (f_a > 1e-10) with cost
/// -l_a(f_a) - theta_min_a(f_a).
struct AuxGraph {
  std::size_t node_count = 0;
  std::vector<AuxArc> arcs;
};

AuxGraph build_aux_graph(const Instance& instance, const Flow& flow);
std::string aux_graph_to_dot(const Instance& instance, const AuxGraph& aux);

struct NegativeCycle {
  std::vector<std::size_t> aux_arcs;  // indices into AuxGraph::arcs, in traversal order
  double cost = 0.0;
  bool reachable = true;  // reachable from the common source
};

/// Any negative cycle of the auxiliary graph. Reachability is reported relative
/// to `source` when given.
std::optional<NegativeCycle> find_negative_cycle(const AuxGraph& aux, std::optional<NodeIndex> source);

struct InducibilityResult {
  bool inducible = false;
  std::optional<NegativeCycle> witness;
  /// Negative cycles found only outside the part reachable from the source.
  bool unreachable_negative_cycle = false;
};

/// Negative-cycle test on the auxiliary graph. Throws NotCommonSource for
/// instances whose commodities do not share a source: there a flow can be
/// inducible even though the auxiliary graph has a negative cycle.
InducibilityResult is_inducible(const Instance& instance, const Flow& flow);

/// Shortest-path potentials pi on the auxiliary graph give
/// delta_a(f_a) = max{theta_min_a(f_a), pi_v - pi_u - l_a(f_a)}, extended to a
/// function by scaling theta_max (non-negative values) or theta_min (negative
/// values). Throws NotInducible, NotCommonSource.
Deviation recover_deviation(const Instance& instance, const Flow& flow);

struct OracleResult {
  bool inducible = false;
  /// Smallest grid value of max over (commodity, flow path P, path P') of
  /// q_P - q_P'; zero or below means every flow path is shortest.
  double violation = 0.0;
  /// Acceptance threshold: half the sum of support-arc grid steps plus 1e-9.
  double tolerance = 0.0;
  std::size_t evaluations = 0;
};

/// Grid search for a deviation satisfying the path conditions of every
/// commodity. Support arcs take values theta_min + k * step with
/// step = resolution * (theta_max - theta_min) at the arc flow; arcs without
/// flow sit at theta_max. Branch and bound keeps the search exact on the grid.
/// Throws TooLarge when more than `budget` nodes would be explored, and
/// PathExplosion via path enumeration.
OracleResult oracle_inducible(const Instance& instance, const Flow& flow, double grid_resolution = 1e-2,
                              std::size_t budget = 20'000'000);

struct AuxStep {
  ArcIndex arc = 0;
  bool reversed = false;
};

/// A path in the auxiliary graph, either from the common source to the sink of
/// `commodity` or back.
struct AuxPath {
  std::size_t commodity = 0;
  std::vector<AuxStep> steps;
};

struct PathInequalityViolation {
  std::size_t path_index = 0;
  Path flow_path;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PathInequalityReport {
  std::vector<PathInequalityViolation> violations;
  std::size_t checked = 0;
  bool ok() const { return violations.empty(); }
};

/// For an (s,t_i)-path chi:  sum_{X_i} (l + theta_min) <= aux cost of chi.
/// For a (t_i,s)-path psi:   sum_{X_i} (l + theta_max) >= -aux cost of psi.
/// Checked against every flow-carrying path X_i of the commodity.
PathInequalityReport check_path_inequalities(const Instance& instance, const Flow& flow,
                                             const std::vector<AuxPath>& alt_paths, double tol = 1e-9);

/// Aux cost of a step sequence; throws InvalidInput if a step is not an aux arc.
double aux_path_cost(const Instance& instance, const Flow& flow, const AuxPath& path);

/// Every simple path between the common source and the commodity's sink in
/// the auxiliary graph, in both directions (at most `cap`).
std::vector<AuxPath> enumerate_aux_paths(const Instance& instance, const Flow& flow, std::size_t commodity,
                                         std::size_t cap);

}  // namespace devratio
