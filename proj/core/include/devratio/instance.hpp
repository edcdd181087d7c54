#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "devratio/function.hpp"

namespace devratio {

using NodeIndex = std::size_t;
using ArcIndex = std::size_t;

struct Arc {
  std::string id;
  NodeIndex tail = 0;
  NodeIndex head = 0;
  LatencyFn latency;
};

struct Commodity {
  NodeIndex source = 0;
  NodeIndex sink = 0;
  double demand = 1.0;
};

/// Specification of an arc before node ids are resolved.
struct ArcSpec {
  std::string id;
  std::string tail;
  std::string head;
  LatencyFn latency;
};

struct CommoditySpec {
  std::string source;
  std::string sink;
  double demand = 1.0;
};

/// Per-arc bounds theta_min <= delta <= theta_max on admissible deviations.
///
/// theta_min is stored through its non-negative magnitude (theta_min = -lower).
/// The (alpha, beta) special case sets lower = -alpha * l and upper = beta * l
/// and remembers alpha and beta.
class ThresholdPair {
 public:
  struct PerArc {
    std::string arc_id;
    ScalarFn lower_magnitude;  // theta_min = -lower_magnitude
    ScalarFn upper;            // theta_max
  };

  static ThresholdPair alpha_beta(double alpha, double beta);
  static ThresholdPair zero() { return alpha_beta(0.0, 0.0); }
  /// Arcs not listed get zero thresholds.
  static ThresholdPair per_arc(std::vector<PerArc> entries);

  bool is_alpha_beta() const { return alpha_beta_.has_value(); }
  double alpha() const;
  double beta() const;
  const std::vector<PerArc>& per_arc_entries() const { return entries_; }

 private:
  struct AlphaBeta {
    double alpha;
    double beta;
  };
  std::optional<AlphaBeta> alpha_beta_;
  std::vector<PerArc> entries_;
};

/// A per-arc additive perturbation delta_a of the latency. Values may be
/// negative; feasibility is relative to an instance's thresholds.
class Deviation {
 public:
  Deviation() = default;
  explicit Deviation(std::size_t arc_count) : fns_(arc_count) {}
  explicit Deviation(std::vector<ScalarFn> fns) : fns_(std::move(fns)) {}

  static Deviation zero(std::size_t arc_count) { return Deviation(arc_count); }

  std::size_t size() const { return fns_.size(); }
  const ScalarFn& operator[](ArcIndex a) const { return fns_.at(a); }
  double value(ArcIndex a, double x) const { return fns_.empty() ? 0.0 : fns_.at(a)(x); }
  void set(ArcIndex a, ScalarFn fn) { fns_.at(a) = std::move(fn); }
  bool is_zero() const;

 private:
  std::vector<ScalarFn> fns_;
};

/// A non-atomic routing game together with deviation thresholds.
///
/// Arcs are stored sorted by id; parallel arcs are allowed. Construction
/// validates endpoints, commodity sanity, distinct sinks and the assumption
/// l_a + theta_min_a >= 0 on the sample grid.
class Instance {
 public:
  Instance(std::vector<std::string> nodes, std::vector<ArcSpec> arcs, std::vector<CommoditySpec> commodities,
           ThresholdPair thresholds);

  std::size_t node_count() const { return node_ids_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  std::size_t commodity_count() const { return commodities_.size(); }

  const std::vector<std::string>& node_ids() const { return node_ids_; }
  const std::string& node_id(NodeIndex v) const { return node_ids_.at(v); }
  std::optional<NodeIndex> find_node(const std::string& id) const;
  NodeIndex node(const std::string& id) const;  // throws InvalidInput

  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcIndex a) const { return arcs_.at(a); }
  std::optional<ArcIndex> find_arc(const std::string& id) const;
  ArcIndex arc_index(const std::string& id) const;  // throws InvalidInput
  const std::vector<ArcIndex>& out_arcs(NodeIndex v) const { return out_.at(v); }
  const std::vector<ArcIndex>& in_arcs(NodeIndex v) const { return in_.at(v); }

  const std::vector<Commodity>& commodities() const { return commodities_; }
  const Commodity& commodity(std::size_t i) const { return commodities_.at(i); }
  double total_demand() const { return total_demand_; }
  bool common_source() const { return common_source_; }

  const ThresholdPair& thresholds() const { return thresholds_; }
  /// theta_min_a(x) <= 0.
  double theta_min(ArcIndex a, double x) const { return -lower_[a](x); }
  /// theta_max_a(x) >= 0.
  double theta_max(ArcIndex a, double x) const { return upper_[a](x); }
  const ScalarFn& theta_min_magnitude_fn(ArcIndex a) const { return lower_.at(a); }
  const ScalarFn& theta_max_fn(ArcIndex a) const { return upper_.at(a); }
  bool theta_min_is_zero() const;

  /// Copy of this instance with different thresholds (validated again).
  Instance with_thresholds(ThresholdPair thresholds) const;

  /// Upper end of the grid used for function checks:
  /// max(total demand, largest breakpoint of any latency or threshold).
  double check_range() const;

 private:
  void resolve_thresholds();

  std::vector<std::string> node_ids_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcIndex>> out_;
  std::vector<std::vector<ArcIndex>> in_;
  std::vector<Commodity> commodities_;
  ThresholdPair thresholds_;
  std::vector<ScalarFn> lower_;
  std::vector<ScalarFn> upper_;
  double total_demand_ = 0.0;
  bool common_source_ = true;
};

/// A simple directed path as a sequence of arc indices.
using Path = std::vector<ArcIndex>;

struct PathFlow {
  Path path;
  double value = 0.0;
};

/// Path-based flow with a cached arc-flow view.
///
/// Construction checks that every path is a simple source->sink path of its
/// commodity and that each commodity routes its demand (1e-9 absolute).
class Flow {
 public:
  static constexpr double kDemandTolerance = 1e-9;

  Flow() = default;
  Flow(const Instance& instance, std::vector<std::vector<PathFlow>> per_commodity);

  std::size_t commodity_count() const { return paths_.size(); }
  const std::vector<PathFlow>& paths(std::size_t commodity) const { return paths_.at(commodity); }
  const std::vector<std::vector<PathFlow>>& all_paths() const { return paths_; }

  /// f_a summed over commodities.
  std::span<const double> arc_flows() const { return arc_flow_; }
  double arc_flow(ArcIndex a) const { return arc_flow_.at(a); }
  /// f^i_a for one commodity.
  std::span<const double> commodity_arc_flows(std::size_t commodity) const { return commodity_arc_flow_.at(commodity); }

  /// Arcs with f_a > threshold.
  std::vector<bool> support(double threshold = 1e-10) const;

 private:
  std::vector<std::vector<PathFlow>> paths_;
  std::vector<double> arc_flow_;
  std::vector<std::vector<double>> commodity_arc_flow_;
};

/// Builds a single-commodity instance quickly; used heavily by generators and tests.
Instance make_instance(std::vector<std::string> nodes, std::vector<ArcSpec> arcs,
                       std::vector<CommoditySpec> commodities, ThresholdPair thresholds = ThresholdPair::zero());

/// Checks that `path` is a simple path from `from` to `to` in `instance`.
bool is_simple_path(const Instance& instance, const Path& path, NodeIndex from, NodeIndex to);

/// Resolves a list of arc ids into a path.
Path path_from_ids(const Instance& instance, std::span<const std::string> ids);
/// Resolves a node sequence into a path, choosing the lowest-id arc between consecutive nodes.
Path path_from_nodes(const Instance& instance, std::span<const std::string> nodes);

std::vector<std::string> path_ids(const Instance& instance, const Path& path);

}  // namespace devratio
