#include "devratio/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "devratio/errors.hpp"

namespace devratio {

ThresholdPair ThresholdPair::alpha_beta(double alpha, double beta) {
  if (!std::isfinite(alpha) || !(alpha > -1.0) || alpha > 0.0) {
    fail(ErrorCode::AlphaOutOfRange, "alpha must satisfy -1 < alpha <= 0");
  }
  if (!std::isfinite(beta) || beta < 0.0) fail(ErrorCode::InvalidInput, "beta must be non-negative");
  ThresholdPair t;
  t.alpha_beta_ = AlphaBeta{alpha, beta};
  return t;
}

ThresholdPair ThresholdPair::per_arc(std::vector<PerArc> entries) {
  std::sort(entries.begin(), entries.end(), [](const PerArc& a, const PerArc& b) { return a.arc_id < b.arc_id; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].arc_id == entries[i - 1].arc_id) {
      fail(ErrorCode::InvalidInput, "duplicate threshold entry for arc " + entries[i].arc_id);
    }
  }
  ThresholdPair t;
  t.entries_ = std::move(entries);
  return t;
}

double ThresholdPair::alpha() const {
  if (!alpha_beta_) fail(ErrorCode::InvalidInput, "thresholds are not of (alpha, beta) form");
  return alpha_beta_->alpha;
}

double ThresholdPair::beta() const {
  if (!alpha_beta_) fail(ErrorCode::InvalidInput, "thresholds are not of (alpha, beta) form");
  return alpha_beta_->beta;
}

bool Deviation::is_zero() const {
  return std::all_of(fns_.begin(), fns_.end(), [](const ScalarFn& f) { return f.is_zero(); });
}

Instance::Instance(std::vector<std::string> nodes, std::vector<ArcSpec> arcs, std::vector<CommoditySpec> commodities,
                   ThresholdPair thresholds)
    : node_ids_(std::move(nodes)), thresholds_(std::move(thresholds)) {
  if (node_ids_.empty()) fail(ErrorCode::InvalidInput, "instance has no nodes");
  {
    std::set<std::string> seen;
    for (const auto& id : node_ids_) {
      if (!seen.insert(id).second) fail(ErrorCode::InvalidInput, "duplicate node id " + id);
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const ArcSpec& a, const ArcSpec& b) { return a.id < b.id; });
  out_.resize(node_ids_.size());
  in_.resize(node_ids_.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i > 0 && arcs[i].id == arcs[i - 1].id) fail(ErrorCode::InvalidInput, "duplicate arc id " + arcs[i].id);
    Arc a{arcs[i].id, node(arcs[i].tail), node(arcs[i].head), std::move(arcs[i].latency)};
    if (a.tail == a.head) fail(ErrorCode::InvalidInput, "self-loop arc " + a.id);
    out_[a.tail].push_back(i);
    in_[a.head].push_back(i);
    arcs_.push_back(std::move(a));
  }
  if (commodities.empty()) fail(ErrorCode::InvalidInput, "instance has no commodities");
  std::set<NodeIndex> sinks;
  for (const auto& c : commodities) {
    Commodity k{node(c.source), node(c.sink), c.demand};
    if (!std::isfinite(k.demand) || k.demand <= 0.0) fail(ErrorCode::InvalidInput, "demand must be positive");
    if (k.source == k.sink) fail(ErrorCode::InvalidInput, "commodity source equals sink");
    if (!sinks.insert(k.sink).second) fail(ErrorCode::InvalidInput, "commodity sinks must be pairwise distinct");
    total_demand_ += k.demand;
    commodities_.push_back(k);
  }
  common_source_ = std::all_of(commodities_.begin(), commodities_.end(),
                               [&](const Commodity& k) { return k.source == commodities_.front().source; });
  resolve_thresholds();
}

void Instance::resolve_thresholds() {
  lower_.assign(arcs_.size(), ScalarFn::zero());
  upper_.assign(arcs_.size(), ScalarFn::zero());
  if (thresholds_.is_alpha_beta()) {
    const double alpha = thresholds_.alpha();
    const double beta = thresholds_.beta();
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      lower_[a] = arcs_[a].latency.fn().scaled(-alpha);
      upper_[a] = arcs_[a].latency.fn().scaled(beta);
    }
  } else {
    for (const auto& e : thresholds_.per_arc_entries()) {
      const ArcIndex a = arc_index(e.arc_id);
      lower_[a] = e.lower_magnitude;
      upper_[a] = e.upper;
    }
  }
  const double range = check_range();
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const ScalarFn* fns[] = {&arcs_[a].latency.fn(), &lower_[a], &upper_[a]};
    for (double x : merged_sample_grid(range, fns)) {
      const double lo = lower_[a](x);
      if (lo < -1e-12) fail(ErrorCode::InvalidInput, "theta_min must be <= 0 on arc " + arcs_[a].id);
      if (upper_[a](x) < -1e-12) fail(ErrorCode::InvalidInput, "theta_max must be >= 0 on arc " + arcs_[a].id);
      if (arcs_[a].latency(x) - lo < -1e-12) {
        fail(ErrorCode::InvalidInput, "l + theta_min must be non-negative on arc " + arcs_[a].id);
      }
    }
  }
}

std::optional<NodeIndex> Instance::find_node(const std::string& id) const {
  const auto it = std::find(node_ids_.begin(), node_ids_.end(), id);
  if (it == node_ids_.end()) return std::nullopt;
  return static_cast<NodeIndex>(it - node_ids_.begin());
}

NodeIndex Instance::node(const std::string& id) const {
  const auto v = find_node(id);
  if (!v) fail(ErrorCode::InvalidInput, "unknown node " + id);
  return *v;
}

std::optional<ArcIndex> Instance::find_arc(const std::string& id) const {
  const auto it =
      std::lower_bound(arcs_.begin(), arcs_.end(), id, [](const Arc& a, const std::string& v) { return a.id < v; });
  if (it == arcs_.end() || it->id != id) return std::nullopt;
  return static_cast<ArcIndex>(it - arcs_.begin());
}

ArcIndex Instance::arc_index(const std::string& id) const {
  const auto a = find_arc(id);
  if (!a) fail(ErrorCode::InvalidInput, "unknown arc " + id);
  return *a;
}

bool Instance::theta_min_is_zero() const {
  return std::all_of(lower_.begin(), lower_.end(), [](const ScalarFn& f) { return f.is_zero(); });
}

Instance Instance::with_thresholds(ThresholdPair thresholds) const {
  Instance copy = *this;
  copy.thresholds_ = std::move(thresholds);
  copy.resolve_thresholds();
  return copy;
}

double Instance::check_range() const {
  double range = total_demand_;
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    range = std::max(range, arcs_[a].latency.fn().last_breakpoint());
    if (a < lower_.size()) range = std::max({range, lower_[a].last_breakpoint(), upper_[a].last_breakpoint()});
  }
  return range;
}

Flow::Flow(const Instance& instance, std::vector<std::vector<PathFlow>> per_commodity) {
  if (per_commodity.size() != instance.commodity_count()) {
    fail(ErrorCode::InfeasibleFlow, "flow has the wrong number of commodities");
  }
  arc_flow_.assign(instance.arc_count(), 0.0);
  commodity_arc_flow_.assign(per_commodity.size(), std::vector<double>(instance.arc_count(), 0.0));
  paths_.resize(per_commodity.size());
  for (std::size_t i = 0; i < per_commodity.size(); ++i) {
    const Commodity& k = instance.commodity(i);
    std::map<Path, double> merged;
    for (auto& pf : per_commodity[i]) {
      if (!std::isfinite(pf.value) || pf.value < -1e-12) fail(ErrorCode::InfeasibleFlow, "negative path flow");
      if (!is_simple_path(instance, pf.path, k.source, k.sink)) {
        fail(ErrorCode::InfeasibleFlow, "path is not a simple source-sink path of its commodity");
      }
      if (pf.value > 0.0) merged[pf.path] += pf.value;
    }
    double total = 0.0;
    for (auto& [path, value] : merged) {
      total += value;
      for (ArcIndex a : path) {
        commodity_arc_flow_[i][a] += value;
        arc_flow_[a] += value;
      }
      paths_[i].push_back({path, value});
    }
    if (std::abs(total - k.demand) > kDemandTolerance) {
      fail(ErrorCode::InfeasibleFlow, "commodity " + std::to_string(i) + " routes " + std::to_string(total) +
                                          " instead of its demand " + std::to_string(k.demand));
    }
  }
}

std::vector<bool> Flow::support(double threshold) const {
  std::vector<bool> s(arc_flow_.size());
  for (std::size_t a = 0; a < arc_flow_.size(); ++a) s[a] = arc_flow_[a] > threshold;
  return s;
}

Instance make_instance(std::vector<std::string> nodes, std::vector<ArcSpec> arcs,
                       std::vector<CommoditySpec> commodities, ThresholdPair thresholds) {
  return Instance(std::move(nodes), std::move(arcs), std::move(commodities), std::move(thresholds));
}

bool is_simple_path(const Instance& instance, const Path& path, NodeIndex from, NodeIndex to) {
  if (path.empty()) return false;
  std::vector<bool> visited(instance.node_count(), false);
  NodeIndex at = from;
  visited[at] = true;
  for (ArcIndex a : path) {
    if (a >= instance.arc_count()) return false;
    const Arc& arc = instance.arc(a);
    if (arc.tail != at || visited[arc.head]) return false;
    at = arc.head;
    visited[at] = true;
  }
  return at == to;
}

Path path_from_ids(const Instance& instance, std::span<const std::string> ids) {
  Path p;
  for (const auto& id : ids) p.push_back(instance.arc_index(id));
  return p;
}

Path path_from_nodes(const Instance& instance, std::span<const std::string> nodes) {
  Path p;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const NodeIndex u = instance.node(nodes[i]);
    const NodeIndex v = instance.node(nodes[i + 1]);
    std::optional<ArcIndex> found;
    for (ArcIndex a : instance.out_arcs(u)) {
      if (instance.arc(a).head == v) {
        found = a;
        break;
      }
    }
    if (!found) fail(ErrorCode::InvalidInput, "no arc " + nodes[i] + "->" + nodes[i + 1]);
    p.push_back(*found);
  }
  return p;
}

std::vector<std::string> path_ids(const Instance& instance, const Path& path) {
  std::vector<std::string> ids;
  ids.reserve(path.size());
  for (ArcIndex a : path) ids.push_back(instance.arc(a).id);
  return ids;
}

}  // namespace devratio
