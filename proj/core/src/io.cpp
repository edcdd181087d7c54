#include "devratio/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "devratio/errors.hpp"

namespace devratio {
namespace {

using nlohmann::json;

json fn_json(const ScalarFn& fn) {
  if (fn.is_polynomial()) {
    json c = json::array();
    for (double v : fn.coefficients()) c.push_back(v);
    return {{"poly", c}};
  }
  json pts = json::array();
  for (const auto& bp : fn.breakpoints()) pts.push_back({bp.x, bp.y});
  return {{"pwl", pts}};
}

ScalarFn fn_from(const json& j) {
  if (j.is_number()) return ScalarFn::constant(j.get<double>());
  if (!j.is_object()) fail(ErrorCode::InvalidInput, "function must be an object");
  if (j.contains("poly")) return ScalarFn::polynomial(j.at("poly").get<std::vector<double>>());
  if (j.contains("pwl")) {
    std::vector<Breakpoint> pts;
    for (const auto& p : j.at("pwl")) {
      if (!p.is_array() || p.size() != 2) fail(ErrorCode::InvalidInput, "pwl breakpoint must be [x, y]");
      pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return ScalarFn::piecewise_linear(std::move(pts));
  }
  fail(ErrorCode::InvalidInput, "function needs a \"poly\" or \"pwl\" key");
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("unexpected JSON structure: ") + e.what());
  }
}

}  // namespace

std::string function_to_json(const ScalarFn& fn) { return fn_json(fn).dump(); }

ScalarFn function_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] { return fn_from(j); });
}

std::string instance_to_json(const Instance& instance) {
  json j;
  j["nodes"] = instance.node_ids();
  json arcs = json::array();
  for (const Arc& a : instance.arcs()) {
    arcs.push_back({{"id", a.id},
                    {"tail", instance.node_id(a.tail)},
                    {"head", instance.node_id(a.head)},
                    {"latency", fn_json(a.latency.fn())}});
  }
  j["arcs"] = arcs;
  json ks = json::array();
  for (const Commodity& k : instance.commodities()) {
    ks.push_back({{"source", instance.node_id(k.source)}, {"sink", instance.node_id(k.sink)}, {"demand", k.demand}});
  }
  j["commodities"] = ks;
  const ThresholdPair& t = instance.thresholds();
  if (t.is_alpha_beta()) {
    j["thresholds"] = {{"kind", "alpha_beta"}, {"alpha", t.alpha()}, {"beta", t.beta()}};
  } else {
    json per = json::object();
    for (const auto& e : t.per_arc_entries()) {
      per[e.arc_id] = {{"max", fn_json(e.upper)}, {"neg_min", fn_json(e.lower_magnitude)}};
    }
    j["thresholds"] = {{"kind", "per_arc"}, {"arcs", per}};
  }
  return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    std::vector<std::string> nodes = j.at("nodes").get<std::vector<std::string>>();
    std::vector<ArcSpec> arcs;
    for (const auto& a : j.at("arcs")) {
      arcs.push_back({a.at("id").get<std::string>(), a.at("tail").get<std::string>(),
                      a.at("head").get<std::string>(), LatencyFn(fn_from(a.at("latency")))});
    }
    std::vector<CommoditySpec> ks;
    for (const auto& k : j.at("commodities")) {
      ks.push_back({k.at("source").get<std::string>(), k.at("sink").get<std::string>(), k.value("demand", 1.0)});
    }
    ThresholdPair t = ThresholdPair::zero();
    if (j.contains("thresholds")) {
      const json& tj = j.at("thresholds");
      const std::string kind = tj.value("kind", "alpha_beta");
      if (kind == "alpha_beta") {
        t = ThresholdPair::alpha_beta(tj.value("alpha", 0.0), tj.value("beta", 0.0));
      } else if (kind == "per_arc") {
        std::vector<ThresholdPair::PerArc> entries;
        for (const auto& [id, e] : tj.at("arcs").items()) {
          entries.push_back({id, e.contains("neg_min") ? fn_from(e.at("neg_min")) : ScalarFn::zero(),
                             e.contains("max") ? fn_from(e.at("max")) : ScalarFn::zero()});
        }
        t = ThresholdPair::per_arc(std::move(entries));
      } else {
        fail(ErrorCode::InvalidInput, "unknown threshold kind " + kind);
      }
    }
    return Instance(std::move(nodes), std::move(arcs), std::move(ks), std::move(t));
  });
}

std::string deviation_to_json(const Instance& instance, const Deviation& deviation) {
  json arcs = json::object();
  for (std::size_t a = 0; a < deviation.size(); ++a) {
    if (!deviation[a].is_zero()) arcs[instance.arc(a).id] = fn_json(deviation[a]);
  }
  return json{{"arcs", arcs}}.dump(2);
}

Deviation deviation_from_json(const Instance& instance, const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    Deviation d(instance.arc_count());
    for (const auto& [id, f] : j.at("arcs").items()) d.set(instance.arc_index(id), fn_from(f));
    return d;
  });
}

std::string flow_to_json(const Instance& instance, const Flow& flow) {
  json ks = json::array();
  for (std::size_t i = 0; i < flow.commodity_count(); ++i) {
    json paths = json::array();
    for (const auto& pf : flow.paths(i)) paths.push_back({{"arcs", path_ids(instance, pf.path)}, {"flow", pf.value}});
    ks.push_back({{"paths", paths}});
  }
  return json{{"commodities", ks}}.dump(2);
}

Flow flow_from_json(const Instance& instance, const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    std::vector<std::vector<PathFlow>> per;
    for (const auto& k : j.at("commodities")) {
      std::vector<PathFlow> paths;
      for (const auto& p : k.at("paths")) {
        const auto ids = p.at("arcs").get<std::vector<std::string>>();
        paths.push_back({path_from_ids(instance, ids), p.at("flow").get<double>()});
      }
      per.push_back(std::move(paths));
    }
    return Flow(instance, std::move(per));
  });
}

std::string instance_to_dot(const Instance& instance) {
  std::ostringstream os;
  os << "digraph instance {\n  rankdir=LR;\n";
  for (const auto& id : instance.node_ids()) os << "  \"" << id << "\";\n";
  for (const Arc& a : instance.arcs()) {
    os << "  \"" << instance.node_id(a.tail) << "\" -> \"" << instance.node_id(a.head) << "\" [label=\"" << a.id
       << ": " << a.latency.fn().describe() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  out << content;
}

}  // namespace devratio
