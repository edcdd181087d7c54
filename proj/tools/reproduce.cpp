#include "reproduce.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <locale>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "devratio/alternating.hpp"
#include "devratio/bounds.hpp"
#include "devratio/cost.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/errors.hpp"
#include "devratio/generators.hpp"
#include "devratio/random_instance.hpp"

namespace devratio::cli {

namespace {

// Rows are computed in parallel and joined in index order.
template <class Fn>
std::vector<std::string> rows_parallel(std::size_t count, std::size_t jobs, Fn fn) {
  std::vector<std::string> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        rows[k] = fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string join(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv(const std::string& header, const std::vector<std::string>& rows) {
  std::string out = header + "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

SolverConfig solver(const ReproduceOptions& o) {
  SolverConfig cfg;
  cfg.relative_gap_tol = o.tol;
  return cfg;
}

std::string braess_sweep(const ReproduceOptions& o) {
  const std::vector<double> betas = {0.5, 1.0, 2.0};
  const std::size_t count = 7 * betas.size();
  const SolverConfig cfg = solver(o);
  auto rows = rows_parallel(count, o.jobs, [&](std::size_t k) {
    const std::size_t m = 2 + k / betas.size();
    const double beta = betas[k % betas.size()];
    const GeneratedCase c = braess(m, beta);
    const double c0 = social_cost(c.instance, wardrop(c.instance, Deviation(), cfg).flow);
    const double cd = social_cost(c.instance, wardrop(c.instance, c.deviation, cfg).flow);
    const AltPathTree tree = build_alt_path_tree(c.instance, c.x, c.z);
    const AlphaBetaBound b = bound_alpha_beta(c.instance, 0.0, beta, tree.eta);
    return join({std::to_string(m), std::to_string(c.instance.node_count()), num(beta), num(c.expected_ratio),
                 num(c.observed_ratio), num(cd / c0), num(b.fine), num(b.coarse)});
  });
  return csv("m,n,beta,expected_ratio,observed_ratio,solver_ratio,fine_bound,coarse_bound", rows);
}

std::string fibonacci_sweep(const ReproduceOptions& o) {
  const std::vector<std::size_t> ps = {3, 5, 7};
  const std::vector<double> betas = {0.5, 1.0, 2.0};
  auto rows = rows_parallel(ps.size() * betas.size(), o.jobs, [&](std::size_t k) {
    const std::size_t p = ps[k / betas.size()];
    const double beta = betas[k % betas.size()];
    const GeneratedCase c = fibonacci(p, beta);
    return join({std::to_string(p), num(beta), num(c.expected_ratio), num(c.observed_ratio),
                 c.observed_ratio >= c.expected_ratio - 1e-9 ? "1" : "0"});
  });
  return csv("p,beta,expected_lower_bound,observed_ratio,meets_bound", rows);
}

std::string smoothness_affine(const ReproduceOptions& o) {
  const std::vector<double> betas = {0.0, 0.5, 1.0, 2.0, 5.0};
  auto rows = rows_parallel(betas.size(), o.jobs, [&](std::size_t k) {
    const double beta = betas[k];
    SmoothnessQuery q;
    q.latency = LatencyFn::polynomial({1.0, 1.0});
    q.beta = beta;
    const double mu = mu_hat(q);
    const double tight = smoothness_tight_sup(LatencyFn::linear(), beta, 1.0);
    return join({num(beta), num(mu), num(1.0 / (4.0 * (1.0 + beta))), num(bpoa_bound(mu, beta)),
                 num(bpoa_dr_gap(mu, beta)), num(tight), num((1.0 + beta) * (1.0 + beta) / (0.75 + beta))});
  });
  return csv("beta,mu_hat,mu_closed_form,bpoa_bound,bpoa_dr_gap,tight_ratio,tight_closed_form", rows);
}

std::string dominance(const ReproduceOptions& o) {
  if (!o.seed) fail(ErrorCode::InvalidInput, "dominance is randomized and needs --seed");
  const std::uint64_t seed = *o.seed;
  const SolverConfig cfg = solver(o);
  auto rows = rows_parallel(o.count, o.jobs, [&](std::size_t k) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(k)};
    std::uint64_t s[2];
    seq.generate(s, s + 2);
    const std::uint64_t row_seed = s[0] << 32 | s[1];
    RandomInstanceOptions opt;
    opt.alpha = k % 2 == 0 ? 0.0 : -0.25;
    opt.beta = (k / 2) % 2 == 0 ? 0.5 : 1.0;
    const Instance inst = random_common_source_instance(row_seed, opt);
    const Deviation dev = random_alpha_beta_deviation(inst, opt.alpha, opt.beta, row_seed + 1);
    const Flow f0 = wardrop(inst, Deviation(), cfg).flow;
    const Flow fd = wardrop(inst, dev, cfg).flow;
    const double ratio = social_cost(inst, fd) / social_cost(inst, f0);
    const AltPathTree tree = build_alt_path_tree(inst, fd, f0);
    const AlphaBetaBound b = bound_alpha_beta(inst, opt.alpha, opt.beta, tree.eta);
    const bool violation = ratio > b.fine + 1e-6 || b.fine > b.coarse + 1e-6;
    return join({std::to_string(k), std::to_string(row_seed), std::to_string(inst.node_count()),
                 std::to_string(inst.arc_count()), std::to_string(inst.commodity_count()), num(opt.alpha),
                 num(opt.beta), num(ratio), num(b.fine), num(b.coarse), violation ? "1" : "0"});
  });
  return csv("index,seed,nodes,arcs,commodities,alpha,beta,ratio,fine_bound,coarse_bound,violation", rows);
}

}  // namespace

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

std::string reproduce(const std::string& target, const ReproduceOptions& options) {
  if (target == "braess-sweep") return braess_sweep(options);
  if (target == "fibonacci-sweep") return fibonacci_sweep(options);
  if (target == "smoothness-affine") return smoothness_affine(options);
  if (target == "dominance") return dominance(options);
  fail(ErrorCode::InvalidInput, "unknown reproduce target '" + target + "'");
}

}  // namespace devratio::cli
