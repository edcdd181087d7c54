#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "devratio/alternating.hpp"
#include "devratio/bounds.hpp"
#include "devratio/cost.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/errors.hpp"
#include "devratio/generators.hpp"
#include "devratio/inducibility.hpp"
#include "devratio/io.hpp"
#include "devratio/search.hpp"
#include "reproduce.hpp"

using json = nlohmann::json;
using namespace devratio;
using cli::num;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNotConverged = 4;

struct Globals {
  double tol = 1e-8;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  std::string out;
  std::string dot;
};

struct GenerateArgs {
  std::string family;
  std::size_t m = 5;
  std::size_t p = 7;
  double beta = 1.0;
  double r = 1.0;
  double ramp_delta = 0.01;
  std::optional<double> epsilon;
  std::vector<double> poly = {0.0, 1.0};
  std::string graph = "path";
  std::size_t n = 4;
  std::optional<std::string> s;
  std::optional<std::string> t;
};

struct FileArgs {
  std::string instance;
  std::string flow;
  std::string deviation;
  std::string which = "x";
  std::optional<double> alpha;
  std::optional<double> beta;
  bool oracle = false;
  double resolution = 1e-2;
};

struct BoundArgs {
  std::string kind;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  double r = 1.0;
  double gamma = 0.0;
  double kappa = 1.0;
  double epsilon = 0.0;
  std::vector<double> poly;
  double domain_max = 1e6;
  std::size_t grid = 512;
  std::vector<double> tau;
  std::vector<double> demands;
  std::vector<std::size_t> eta;
  std::string instance;
  std::string case_file;
};

struct RatioArgs {
  std::string instance;
  std::size_t grid = 3;
  std::size_t restarts = 5;
  bool best = false;
  std::string dump_grid;
};

struct ReproduceArgs {
  std::string target;
  std::size_t count = 500;
};

SolverConfig solver_config(const Globals& g) {
  SolverConfig cfg;
  cfg.relative_gap_tol = g.tol;
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

// A sidecar stores flows and deviations under named keys; a bare file is the
// object itself.
std::string section(const std::string& path, const std::string& key) {
  const json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) fail(ErrorCode::InvalidInput, path + " is not valid JSON");
  if (doc.is_object() && doc.contains(key)) return doc.at(key).dump();
  return doc.dump();
}

Instance load_instance(const FileArgs& f) {
  Instance inst = instance_from_json(read_file(f.instance));
  if (f.alpha || f.beta) inst = inst.with_thresholds(ThresholdPair::alpha_beta(f.alpha.value_or(0.0), f.beta.value_or(0.0)));
  return inst;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) std::cout << text << "\n";
  else write_file(g.out, text + "\n");
}

void write_dot(const Globals& g, const std::string& text) {
  if (!g.dot.empty()) write_file(g.dot, text);
}

json parse(const std::string& text) { return json::parse(text); }

json case_params(const GenerateArgs& a) {
  json p = json::object();
  if (a.family == "braess" || a.family == "braess-odd" || a.family == "braess-even") {
    p["m"] = a.m;
    p["beta"] = a.beta;
    if (a.family != "braess") p["r"] = a.r;
  } else if (a.family == "fibonacci") {
    p["p"] = a.p;
    p["beta"] = a.beta;
    p["ramp_delta"] = a.ramp_delta;
  } else if (a.family == "smoothness-tight") {
    p["poly"] = a.poly;
    p["beta"] = a.beta;
    p["r"] = a.r;
  } else if (a.family == "ham-reduction") {
    p["graph"] = a.graph;
    p["n"] = a.n;
  }
  return p;
}

int cmd_generate(const Globals& g, const GenerateArgs& a) {
  const std::string prefix = g.out.empty() ? a.family : g.out;
  json side;
  side["family"] = a.family;
  side["params"] = case_params(a);
  std::optional<Instance> inst;

  if (a.family == "braess" || a.family == "braess-odd" || a.family == "braess-even" || a.family == "fibonacci") {
    GeneratedCase c = a.family == "braess"        ? braess(a.m, a.beta)
                      : a.family == "braess-odd"  ? braess_odd(a.m, a.beta, a.r)
                      : a.family == "braess-even" ? braess_even(a.m, a.beta, a.r)
                                                  : fibonacci(a.p, a.beta, a.ramp_delta);
    side["expected_ratio"] = c.expected_ratio;
    side["observed_ratio"] = c.observed_ratio;
    side["deviation"] = parse(deviation_to_json(c.instance, c.deviation));
    side["z"] = parse(flow_to_json(c.instance, c.z));
    side["x"] = parse(flow_to_json(c.instance, c.x));
    std::cout << "expected_ratio=" << num(c.expected_ratio) << "\n";
    std::cout << "observed_ratio=" << num(c.observed_ratio) << "\n";
    inst.emplace(std::move(c.instance));
  } else if (a.family == "smoothness-tight") {
    const double eps = a.epsilon.value_or(a.r / (2.0 * (1.0 + a.beta)));
    side["params"]["epsilon"] = eps;
    SmoothnessCase c = smoothness_tight(LatencyFn::polynomial(a.poly), a.beta, a.r, eps);
    side["ratio"] = c.ratio;
    side["cost_x"] = c.cost_x;
    side["cost_z_star"] = c.cost_z_star;
    side["deviation"] = parse(deviation_to_json(c.instance, c.deviation));
    side["x"] = parse(flow_to_json(c.instance, c.x));
    side["z_star"] = parse(flow_to_json(c.instance, c.z_star));
    std::cout << "ratio=" << num(c.ratio) << "\n";
    inst.emplace(std::move(c.instance));
  } else if (a.family == "ham-reduction") {
    const Digraph graph = a.graph == "path"   ? directed_path(a.n)
                          : a.graph == "star" ? out_star(a.n)
                                              : complete_digraph(a.n);
    const std::string s = a.s.value_or("0");
    const std::string t = a.t.value_or(std::to_string(a.n - 1));
    side["params"]["s"] = s;
    side["params"]["t"] = t;
    inst.emplace(hamiltonian_reduction(graph, s, t));
    std::cout << "target_cost=" << num(static_cast<double>(a.n) - 1.0) << "\n";
  } else {
    auto [i, f] = remark_b1_counterexample();
    side["flow"] = parse(flow_to_json(i, f));
    inst.emplace(std::move(i));
  }

  write_file(prefix + ".json", instance_to_json(*inst) + "\n");
  write_file(prefix + ".case.json", side.dump(2) + "\n");
  write_dot(g, instance_to_dot(*inst));
  std::cout << "wrote " << prefix << ".json " << prefix << ".case.json\n";
  return 0;
}

int cmd_solve(const Globals& g, const FileArgs& a) {
  const Instance inst = load_instance(a);
  const Deviation dev = a.deviation.empty() ? Deviation() : deviation_from_json(inst, section(a.deviation, "deviation"));
  const EquilibriumResult res = wardrop(inst, dev, solver_config(g));
  std::cout << "cost=" << num(social_cost(inst, res.flow)) << " gap=" << num(res.relative_gap)
            << " iterations=" << res.iterations << "\n";
  emit(g, flow_to_json(inst, res.flow));
  write_dot(g, instance_to_dot(inst));
  return 0;
}

std::string describe_cycle(const Instance& inst, const AuxGraph& aux, const NegativeCycle& c) {
  std::string out;
  for (std::size_t k : c.aux_arcs) {
    const AuxArc& a = aux.arcs[k];
    if (!out.empty()) out += ' ';
    out += (a.reversed ? "~" : "") + inst.arc(a.original).id;
  }
  return out;
}

int cmd_induce(const Globals& g, const FileArgs& a) {
  const Instance inst = load_instance(a);
  const Flow flow = flow_from_json(inst, section(a.flow, a.which));
  const AuxGraph aux = build_aux_graph(inst, flow);
  write_dot(g, aux_graph_to_dot(inst, aux));
  if (a.oracle) {
    const OracleResult o = oracle_inducible(inst, flow, a.resolution);
    std::cout << "oracle: " << (o.inducible ? "inducible" : "not inducible") << " violation=" << num(o.violation)
              << " tolerance=" << num(o.tolerance) << "\n";
  }
  const InducibilityResult r = is_inducible(inst, flow);
  if (!r.inducible) {
    std::cout << "not inducible\n";
    if (r.witness) std::cout << "cycle: " << describe_cycle(inst, aux, *r.witness) << " cost=" << num(r.witness->cost) << "\n";
    return 0;
  }
  std::cout << "inducible\n";
  emit(g, deviation_to_json(inst, recover_deviation(inst, flow)));
  return 0;
}

LatencyFn poly_latency(const std::vector<double>& c) {
  if (c.empty()) fail(ErrorCode::InvalidInput, "--poly is required");
  return LatencyFn::polynomial(c);
}

int cmd_bound(const Globals& g, const BoundArgs& a) {
  auto need_n = [&]() {
    if (a.n == 0) fail(ErrorCode::InvalidInput, "--n is required");
    return a.n;
  };
  const std::string& k = a.kind;
  if (k == "dr") {
    if (a.eta.empty()) {
      std::cout << num(bound_alpha_beta(need_n(), a.alpha, a.beta, {}, {a.r}).coarse) << "\n";
    } else {
      const std::vector<double> d = a.demands.empty() ? std::vector<double>(a.eta.size(), 1.0) : a.demands;
      std::cout << num(bound_alpha_beta(a.n, a.alpha, a.beta, a.eta, d).fine) << "\n";
    }
  } else if (k == "pra") {
    std::cout << num(pra_bound(a.gamma, a.kappa, need_n(), a.r)) << "\n";
  } else if (k == "pra-lower") {
    std::cout << num(pra_lower_even(a.gamma, a.kappa, need_n(), a.r)) << "\n";
  } else if (k == "stability") {
    std::cout << num(stability_bound(a.epsilon, need_n(), a.r)) << "\n";
  } else if (k == "mu-hat" || k == "bpoa" || k == "gap" || k == "path-dev") {
    SmoothnessQuery q{poly_latency(a.poly), k == "path-dev" ? 0.0 : a.beta, a.domain_max, a.grid};
    const MuHatResult mu = mu_hat_detail(q);
    if (mu.boundary) std::cerr << "note: supremum approached at the largest sampled flow\n";
    if (k == "mu-hat") std::cout << num(mu.value) << "\n";
    else if (k == "bpoa") std::cout << num(bpoa_bound(mu.value, a.beta)) << "\n";
    else if (k == "gap") std::cout << num(bpoa_dr_gap(mu.value, a.beta)) << "\n";
    else std::cout << num(path_deviation_bound(mu.value, a.beta)) << "\n";
  } else if (k == "hetero") {
    std::cout << num(heterogeneous_bound(a.tau, a.demands, a.beta)) << "\n";
  } else if (k == "general") {
    if (a.instance.empty() || a.case_file.empty()) fail(ErrorCode::InvalidInput, "--instance and --case are required");
    const Instance inst = instance_from_json(read_file(a.instance));
    const Flow x = flow_from_json(inst, section(a.case_file, "x"));
    const Flow z = flow_from_json(inst, section(a.case_file, "z"));
    const AltPathTree tree = build_alt_path_tree(inst, x, z);
    write_dot(g, alt_path_tree_to_dot(inst, tree));
    const GeneralBound b = bound_general(inst, x, z, tree);
    std::cout << "ratio=" << num(b.cost_x / b.cost_z) << " general=" << num(b.value / b.cost_z);
    if (inst.thresholds().is_alpha_beta()) {
      const AlphaBetaBound ab = bound_alpha_beta(inst, inst.thresholds().alpha(), inst.thresholds().beta(), tree.eta);
      std::cout << " fine=" << num(ab.fine) << " coarse=" << num(ab.coarse);
    }
    std::cout << "\n";
    for (const auto& note : b.notes) std::cerr << "note: " << note << "\n";
  } else {
    fail(ErrorCode::InvalidInput, "unknown bound kind '" + k + "'");
  }
  return 0;
}

int cmd_ratio(const Globals& g, const RatioArgs& a) {
  if (!g.seed) fail(ErrorCode::InvalidInput, "ratio uses randomized restarts and needs --seed");
  const Instance inst = instance_from_json(read_file(a.instance));
  SolverConfig cfg = solver_config(g);
  cfg.restarts = a.restarts;
  SearchOptions opt;
  opt.lambda_grid = a.grid;
  opt.jobs = g.jobs;
  opt.keep_grid = !a.dump_grid.empty();
  const double base = social_cost(inst, wardrop(inst, Deviation(), cfg).flow);
  const SearchResult worst = worst_deviation(inst, opt, cfg);
  auto lambdas = [](const std::vector<double>& l) {
    std::string s;
    for (double v : l) s += (s.empty() ? "" : " ") + num(v);
    return s;
  };
  std::cout << "baseline_cost=" << num(base) << "\n";
  std::cout << "worst_cost=" << num(worst.cost) << "\n";
  std::cout << "empirical_dr=" << num(worst.cost / base) << "\n";
  std::cout << "worst_lambda=" << lambdas(worst.lambda) << "\n";
  if (a.best) {
    const SearchResult best = best_deviation(inst, opt, cfg);
    std::cout << "best_cost=" << num(best.cost) << "\n";
    std::cout << "best_lambda=" << lambdas(best.lambda) << "\n";
  }
  if (!a.dump_grid.empty()) {
    std::string csv;
    for (const Arc& arc : inst.arcs()) csv += "lambda_" + arc.id + ",";
    csv += "cost\n";
    for (std::size_t k = 0; k < worst.grid_costs.size(); ++k) {
      for (double v : lambda_at(k, inst.arc_count(), a.grid)) csv += num(v) + ",";
      csv += num(worst.grid_costs[k]) + "\n";
    }
    write_file(a.dump_grid, csv);
  }
  if (!g.out.empty()) write_file(g.out, deviation_to_json(inst, worst.deviation) + "\n");
  return 0;
}

int cmd_reproduce(const Globals& g, const ReproduceArgs& a) {
  cli::ReproduceOptions o;
  o.seed = g.seed;
  o.jobs = g.jobs;
  o.count = a.count;
  o.tol = g.tol;
  const std::string text = cli::reproduce(a.target, o);
  if (g.out.empty()) std::cout << text;
  else write_file(g.out, text);
  return 0;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
      return kExitUsage;
    case ErrorCode::NotConverged:
      return kExitNotConverged;
    default:
      return kExitDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deviation ratio toolkit for non-atomic routing games"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Relative gap tolerance of the equilibrium solver")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)")->envname("DEVRATIO_JOBS");
  app.add_option("--out", g.out, "Output path (prefix for generate)");
  app.add_option("--dot", g.dot, "Write a Graphviz rendering to this path");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Emit a lower-bound instance with its flows");
  gen->add_option("family", ga.family)
      ->required()
      ->check(CLI::IsMember({"braess", "braess-odd", "braess-even", "fibonacci", "smoothness-tight", "ham-reduction",
                             "remark-b1"}));
  gen->add_option("--m", ga.m, "Braess index m >= 2")->check(CLI::Range(std::size_t{2}, std::size_t{10000}));
  gen->add_option("--p", ga.p, "Fibonacci index, odd >= 3")
      ->check(CLI::Validator(
          [](std::string& s) {
            const long v = std::stol(s);
            return v >= 3 && v % 2 == 1 ? std::string() : std::string("p must be odd and >= 3");
          },
          "ODD>=3"));
  gen->add_option("--beta", ga.beta)->check(CLI::NonNegativeNumber);
  gen->add_option("--r", ga.r, "Total demand r >= 1")->check(CLI::Range(1.0, 1e9));
  gen->add_option("--ramp-delta", ga.ramp_delta)->check(CLI::PositiveNumber);
  gen->add_option("--epsilon", ga.epsilon, "Comparison flow share on the scaled arc");
  gen->add_option("--poly", ga.poly, "Latency coefficients c0,c1,...")->delimiter(',');
  gen->add_option("--graph", ga.graph)->check(CLI::IsMember({"path", "star", "complete"}));
  gen->add_option("--n", ga.n, "Node count of the reduction graph")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  gen->add_option("--s", ga.s);
  gen->add_option("--t", ga.t);

  FileArgs sa;
  auto* solve = app.add_subcommand("solve", "Compute a Wardrop flow");
  solve->add_option("instance", sa.instance)->required();
  solve->add_option("--deviation", sa.deviation, "Deviation JSON or generator sidecar");
  solve->add_option("--alpha", sa.alpha);
  solve->add_option("--beta", sa.beta);

  FileArgs ia;
  auto* induce = app.add_subcommand("induce", "Decide inducibility and recover a deviation");
  induce->add_option("instance", ia.instance)->required();
  induce->add_option("flow", ia.flow, "Flow JSON or generator sidecar")->required();
  induce->add_option("--which", ia.which, "Sidecar key of the flow")->check(CLI::IsMember({"x", "z", "z_star", "flow"}));
  induce->add_option("--alpha", ia.alpha, "Replace thresholds by (alpha, beta)");
  induce->add_option("--beta", ia.beta);
  induce->add_flag("--oracle", ia.oracle, "Also run the grid oracle");
  induce->add_option("--resolution", ia.resolution, "Oracle grid resolution")->check(CLI::Range(1e-6, 1.0));

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound");
  bound->add_option("kind", ba.kind)
      ->required()
      ->check(CLI::IsMember(
          {"dr", "pra", "pra-lower", "stability", "mu-hat", "bpoa", "gap", "path-dev", "hetero", "general"}));
  bound->add_option("--alpha", ba.alpha);
  bound->add_option("--beta", ba.beta);
  bound->add_option("--n", ba.n);
  bound->add_option("--r", ba.r);
  bound->add_option("--gamma", ba.gamma);
  bound->add_option("--kappa", ba.kappa);
  bound->add_option("--epsilon", ba.epsilon);
  bound->add_option("--poly", ba.poly)->delimiter(',');
  bound->add_option("--domain-max", ba.domain_max)->check(CLI::PositiveNumber);
  bound->add_option("--grid", ba.grid)->check(CLI::Range(std::size_t{100}, std::size_t{1} << 16));
  bound->add_option("--tau", ba.tau)->delimiter(',');
  bound->add_option("--demands", ba.demands)->delimiter(',');
  bound->add_option("--eta", ba.eta)->delimiter(',');
  bound->add_option("--instance", ba.instance);
  bound->add_option("--case", ba.case_file);

  RatioArgs ra;
  auto* ratio = app.add_subcommand("ratio", "Brute-force worst deviation and empirical deviation ratio");
  ratio->add_option("instance", ra.instance)->required();
  ratio->add_option("--grid", ra.grid, "lambda takes grid + 1 levels per arc")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  ratio->add_option("--restarts", ra.restarts, "Randomized equilibrium restarts per grid point");
  ratio->add_flag("--best", ra.best, "Also report the best deviation");
  ratio->add_option("--dump-grid", ra.dump_grid, "CSV of every grid point");

  ReproduceArgs pa;
  auto* repro = app.add_subcommand("reproduce", "Regenerate a results table as CSV");
  repro->add_option("target", pa.target)
      ->required()
      ->check(CLI::IsMember({"braess-sweep", "fibonacci-sweep", "smoothness-affine", "dominance"}));
  repro->add_option("--count", pa.count, "Instances in the dominance sweep")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(g, ga);
    if (*solve) return cmd_solve(g, sa);
    if (*induce) return cmd_induce(g, ia);
    if (*bound) return cmd_bound(g, ba);
    if (*ratio) return cmd_ratio(g, ra);
    return cmd_reproduce(g, pa);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
