#include "devratio/random_instance.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "devratio/errors.hpp"

namespace devratio {

Instance random_common_source_instance(std::uint64_t seed, const RandomInstanceOptions& options) {
  if (options.min_nodes < 2 || options.max_nodes < options.min_nodes) {
    fail(ErrorCode::InvalidInput, "need 2 <= min_nodes <= max_nodes");
  }
  if (options.max_commodities == 0) fail(ErrorCode::InvalidInput, "need at least one commodity");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

  const std::size_t n = pick(options.min_nodes, options.max_nodes);
  std::vector<std::string> nodes;
  for (std::size_t v = 0; v < n; ++v) nodes.push_back(std::to_string(v));

  auto latency = [&]() {
    std::vector<double> c(pick(1, std::max<std::size_t>(options.max_degree, 1)) + 1, 0.0);
    c.front() = 0.1 + 1.9 * unit(rng);
    c.back() = 2.0 * unit(rng);
    return LatencyFn::polynomial(std::move(c));
  };

  std::vector<ArcSpec> arcs;
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t u = pick(0, v - 1);
    for (std::size_t w = 0; w < v; ++w) {
      if (w == u || unit(rng) < options.arc_probability) {
        arcs.push_back({nodes[w] + "-" + nodes[v], nodes[w], nodes[v], latency()});
      }
    }
  }

  std::vector<std::size_t> candidates;
  for (std::size_t v = 1; v < n; ++v) candidates.push_back(v);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const std::size_t k = std::min(pick(1, options.max_commodities), candidates.size());
  std::vector<CommoditySpec> commodities;
  for (std::size_t i = 0; i < k; ++i) {
    commodities.push_back({nodes[0], nodes[candidates[i]], i == 0 ? 1.0 : 1.0 + unit(rng)});
  }
  return Instance(std::move(nodes), std::move(arcs), std::move(commodities),
                  ThresholdPair::alpha_beta(options.alpha, options.beta));
}

Deviation random_alpha_beta_deviation(const Instance& instance, double alpha, double beta, std::uint64_t seed) {
  if (alpha > beta) fail(ErrorCode::InvalidInput, "alpha must not exceed beta");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lambda(alpha, beta);
  Deviation d(instance.arc_count());
  for (std::size_t a = 0; a < instance.arc_count(); ++a) {
    d.set(a, instance.arc(a).latency.fn().scaled(lambda(rng)));
  }
  return d;
}

}  // namespace devratio
