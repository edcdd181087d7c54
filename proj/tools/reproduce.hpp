#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace devratio::cli {

struct ReproduceOptions {
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  std::size_t count = 500;
  double tol = 1e-8;
};

/// CSV text for one of braess-sweep, fibonacci-sweep, smoothness-affine, dominance.
/// Throws devratio::Error(InvalidInput) for unknown targets or a missing seed.
std::string reproduce(const std::string& target, const ReproduceOptions& options);

/// 12 significant digits, "." decimal point.
std::string num(double v);

}  // namespace devratio::cli
