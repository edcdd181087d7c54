#include "devratio/search.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "devratio/cost.hpp"
#include "devratio/errors.hpp"

namespace devratio {

namespace {

std::size_t grid_size(std::size_t arcs, std::size_t g) {
  std::size_t total = 1;
  for (std::size_t a = 0; a < arcs; ++a) {
    if (total > kMaxSearchPoints / (g + 1)) {
      fail(ErrorCode::TooLarge, "lambda grid exceeds " + std::to_string(kMaxSearchPoints) + " points");
    }
    total *= g + 1;
  }
  return total;
}

SearchResult run(const Instance& instance, const SearchOptions& options, const SolverConfig& config, bool worst) {
  if (options.lambda_grid == 0) fail(ErrorCode::InvalidInput, "lambda_grid must be at least 1");
  if (!instance.theta_min_is_zero()) {
    fail(ErrorCode::PreconditionUnmet, "lambda scaling of theta_max needs theta_min = 0");
  }
  const std::size_t m = instance.arc_count();
  const std::size_t total = grid_size(m, options.lambda_grid);

  std::vector<double> costs(total, 0.0);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        const Deviation d = scaled_deviation(instance, lambda_at(k, m, options.lambda_grid));
        costs[k] = worst ? worst_equilibrium_cost(instance, d, config)
                         : social_cost(instance, wardrop(instance, d, config).flow);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::size_t jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, total);
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Sequential reduction in index order keeps the result independent of scheduling.
  std::size_t best = 0;
  for (std::size_t k = 1; k < total; ++k) {
    const bool better = worst ? costs[k] > costs[best] + 1e-9 : costs[k] < costs[best] - 1e-9;
    if (better) best = k;
  }
  SearchResult r;
  r.lambda = lambda_at(best, m, options.lambda_grid);
  r.deviation = scaled_deviation(instance, r.lambda);
  r.cost = costs[best];
  r.evaluated = total;
  if (options.keep_grid) r.grid_costs = std::move(costs);
  return r;
}

}  // namespace

std::vector<double> lambda_at(std::size_t index, std::size_t arc_count, std::size_t lambda_grid) {
  std::vector<double> lambda(arc_count, 0.0);
  for (std::size_t a = arc_count; a-- > 0;) {
    lambda[a] = static_cast<double>(index % (lambda_grid + 1)) / static_cast<double>(lambda_grid);
    index /= lambda_grid + 1;
  }
  return lambda;
}

Deviation scaled_deviation(const Instance& instance, const std::vector<double>& lambda) {
  if (lambda.size() != instance.arc_count()) fail(ErrorCode::InvalidInput, "lambda length differs from arc count");
  Deviation d(instance.arc_count());
  for (std::size_t a = 0; a < lambda.size(); ++a) {
    if (lambda[a] < 0.0 || lambda[a] > 1.0) fail(ErrorCode::InvalidInput, "lambda must lie in [0, 1]");
    if (lambda[a] > 0.0) d.set(a, instance.theta_max_fn(a).scaled(lambda[a]));
  }
  return d;
}

SearchResult worst_deviation(const Instance& instance, const SearchOptions& options, const SolverConfig& config) {
  return run(instance, options, config, true);
}

SearchResult best_deviation(const Instance& instance, const SearchOptions& options, const SolverConfig& config) {
  return run(instance, options, config, false);
}

double empirical_dr(const Instance& instance, const SearchOptions& options, const SolverConfig& config) {
  const double base = social_cost(instance, wardrop(instance, Deviation(), config).flow);
  if (!(base > 0.0)) fail(ErrorCode::InvalidInput, "C(f^0) is zero; the ratio is undefined");
  return worst_deviation(instance, options, config).cost / base;
}

}  // namespace devratio
