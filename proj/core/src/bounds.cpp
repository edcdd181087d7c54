#include "devratio/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "devratio/alternating.hpp"
#include "devratio/errors.hpp"
#include "devratio/shortest_path.hpp"

namespace devratio {
namespace {

void check_pra_args(double gamma, double kappa, std::size_t n, double r) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) fail(ErrorCode::InvalidInput, "kappa must be positive");
  if (!std::isfinite(gamma) || gamma * kappa <= -1.0) {
    fail(ErrorCode::GammaOutOfRange, "gamma must exceed -1/kappa");
  }
  if (n < 2) fail(ErrorCode::InvalidInput, "n must be at least 2");
  if (!(r >= 1.0)) fail(ErrorCode::InvalidInput, "r must be at least 1");
}

void check_mu(double mu) {
  if (!std::isfinite(mu) || mu >= 1.0) fail(ErrorCode::MuTooLarge, "smoothness constant must be below 1");
}

constexpr double kGolden = 0.6180339887498949;

template <class F>
double golden_max(F&& f, double lo, double hi, int iters = 60) {
  double a = lo, b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace

double pra_bound(double gamma, double kappa, std::size_t n, double r) {
  check_pra_args(gamma, kappa, n, r);
  const double gk = gamma * kappa;
  const double h = static_cast<double>(half_ceil(n));
  return gk >= 0.0 ? 1.0 + gk * h * r : 1.0 - gk / (1.0 + gk) * h * r;
}

double pra_lower_even(double gamma, double kappa, std::size_t n, double r) {
  check_pra_args(gamma, kappa, n, r);
  if (n % 2 != 0) fail(ErrorCode::InvalidInput, "n must be even");
  const double gk = gamma * kappa;
  const double h = static_cast<double>(half_ceil(n));
  if (gk >= 0.0) return (1.0 + gk * r * h) - gk * (r - 1.0);
  const double w = gk / (1.0 + gk);
  return (1.0 - w * r * h) + w * (r - 1.0);
}

double stability_bound(double epsilon, std::size_t n, double r) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) fail(ErrorCode::EpsilonOutOfRange, "epsilon must lie in (0, 1)");
  return 2.0 * epsilon / (1.0 - epsilon) * static_cast<double>(half_ceil(n)) * r;
}

MuHatResult mu_hat_detail(const SmoothnessQuery& q) {
  if (!(q.domain_max > 0.0)) fail(ErrorCode::InvalidInput, "domain_max must be positive");
  if (q.grid < 100) fail(ErrorCode::InvalidInput, "grid must be at least 100");
  if (!(q.beta >= 0.0)) fail(ErrorCode::InvalidInput, "beta must be non-negative");
  const LatencyFn& l = q.latency;
  const double beta = q.beta;
  const double x_min = q.domain_max * 1e-9;

  auto ratio = [&](double x, double u) {
    const double lx = l(x);
    const double z = u * x;
    const double num = z * (lx - (1.0 + beta) * l(z));
    const double den = x * lx;
    if (den <= 0.0) {
      if (num > 0.0) fail(ErrorCode::Unbounded, "positive numerator where x l(x) = 0");
      return 0.0;
    }
    return num / den;
  };

  const std::size_t n = q.grid;
  auto x_at = [&](std::size_t j) {
    return x_min * std::pow(q.domain_max / x_min, static_cast<double>(j) / static_cast<double>(n - 1));
  };
  auto u_at = [&](std::size_t i) { return static_cast<double>(i) / static_cast<double>(n - 1); };

  bool nonzero = false;
  double best = -kInfinity;
  std::size_t bi = 0, bj = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = x_at(j);
    if (l(x) > 0.0) nonzero = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = ratio(x, u_at(i));
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  if (!nonzero) fail(ErrorCode::InvalidInput, "latency is identically zero on the domain");

  double u = u_at(bi);
  double logx = std::log(x_at(bj));
  const double ulo = u_at(bi == 0 ? 0 : bi - 1), uhi = u_at(std::min(bi + 1, n - 1));
  const double xlo = std::log(x_at(bj == 0 ? 0 : bj - 1)), xhi = std::log(x_at(std::min(bj + 1, n - 1)));
  for (int round = 0; round < 4; ++round) {
    const double cu = golden_max([&](double t) { return ratio(std::exp(logx), t); }, ulo, uhi);
    if (ratio(std::exp(logx), cu) > ratio(std::exp(logx), u)) u = cu;
    const double cx = golden_max([&](double t) { return ratio(std::exp(t), u); }, xlo, xhi);
    if (ratio(std::exp(cx), u) > ratio(std::exp(logx), u)) logx = cx;
  }
  MuHatResult r;
  const double x = std::exp(logx);
  r.value = std::max(0.0, std::max(best, ratio(x, u)));
  r.argmax_x = x;
  r.argmax_z = u * x;
  r.boundary = bj == n - 1 && r.value > 0.0;
  return r;
}

double mu_hat(const SmoothnessQuery& query) { return mu_hat_detail(query).value; }

double bpoa_bound(double mu_hat_value, double beta) {
  check_mu(mu_hat_value);
  return (1.0 + beta) / (1.0 - mu_hat_value);
}

double path_deviation_bound(double mu_hat_zero, double beta) {
  if (!std::isfinite(mu_hat_zero) || mu_hat_zero >= 1.0 / (1.0 + beta)) {
    fail(ErrorCode::MuTooLarge, "path deviation bound needs mu_hat(L, 0) < 1/(1 + beta)");
  }
  return (1.0 + beta) / (1.0 - (1.0 + beta) * mu_hat_zero);
}

double bpoa_dr_gap(double mu_hat_value, double beta) {
  check_mu(mu_hat_value);
  return (1.0 + beta) * mu_hat_value / (1.0 - mu_hat_value);
}

double heterogeneous_bound(const std::vector<double>& taus, const std::vector<double>& demands, double beta) {
  if (taus.size() != demands.size() || taus.empty()) {
    fail(ErrorCode::InvalidInput, "tau and demand lists must be non-empty and of equal length");
  }
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (demands[i] < 0.0 || taus[i] < 0.0) fail(ErrorCode::InvalidInput, "taus and demands must be non-negative");
    total += demands[i];
    weighted += taus[i] * demands[i];
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorCode::DemandNotNormalized, "demands must sum to 1");
  return 1.0 + beta * weighted;
}

double heterogeneous_bound_checked(const std::vector<double>& taus, const std::vector<double>& demands, double beta,
                                   const AltPathTree& tree) {
  const auto all_z = [](const std::vector<TreeEdge>& path) {
    return std::all_of(path.begin(), path.end(), [](const TreeEdge& e) { return e.orientation == Orientation::ZForward; });
  };
  if (!std::all_of(tree.paths.begin(), tree.paths.end(), all_z)) {
    fail(ErrorCode::PreconditionUnmet, "bound only established for alternating paths consisting of Z arcs");
  }
  return heterogeneous_bound(taus, demands, beta);
}

}  // namespace devratio
