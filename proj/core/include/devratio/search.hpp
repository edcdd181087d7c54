#pragma once

#include <cstddef>
#include <vector>

#include "devratio/equilibrium.hpp"
#include "devratio/instance.hpp"

namespace devratio {

/// Grid points above this count raise TooLarge.
inline constexpr std::size_t kMaxSearchPoints = 1'000'000;

struct SearchOptions {
  /// lambda_a ranges over {0, 1/g, ..., 1}: g + 1 levels per arc.
  std::size_t lambda_grid = 3;
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t jobs = 0;
  /// Keep the cost of every grid point (for CSV dumps).
  bool keep_grid = false;
};

struct SearchResult {
  Deviation deviation;
  std::vector<double> lambda;
  double cost = 0.0;
  std::size_t evaluated = 0;
  /// Costs indexed like lambda_at() when keep_grid is set.
  std::vector<double> grid_costs;
};

/// lambda vector of grid point `index`; the first arc is the most significant digit.
std::vector<double> lambda_at(std::size_t index, std::size_t arc_count, std::size_t lambda_grid);

/// delta_a = lambda_a theta_max_a.
Deviation scaled_deviation(const Instance& instance, const std::vector<double>& lambda);

/// Largest worst_equilibrium_cost over the lambda grid. Ties within 1e-9 go to
/// the lexicographically smallest lambda vector. Requires theta_min = 0
/// (PreconditionUnmet); throws TooLarge beyond kMaxSearchPoints.
SearchResult worst_deviation(const Instance& instance, const SearchOptions& options, const SolverConfig& config);

/// Smallest equilibrium cost (deterministic solve) over the lambda grid.
SearchResult best_deviation(const Instance& instance, const SearchOptions& options, const SolverConfig& config);

/// worst_deviation cost divided by C(f^0).
double empirical_dr(const Instance& instance, const SearchOptions& options, const SolverConfig& config);

}  // namespace devratio
