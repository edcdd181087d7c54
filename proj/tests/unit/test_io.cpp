#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "devratio/generators.hpp"
#include "devratio/io.hpp"
#include "helpers.hpp"

using namespace devratio;

TEST(Io, FunctionRoundTrip) {
  const ScalarFn p = ScalarFn::polynomial({1.0, 0.0, 2.5});
  EXPECT_EQ(function_from_json(function_to_json(p)), p);
  const ScalarFn r = ScalarFn::capped_ramp(0.5, 1.5, 3.0);
  EXPECT_EQ(function_from_json(function_to_json(r)), r);
  EXPECT_DOUBLE_EQ(function_from_json(R"({"poly":[0,1]})")(3.0), 3.0);
  EXPECT_DOUBLE_EQ(function_from_json(R"({"pwl":[[0,0],[2,4]]})")(1.0), 2.0);
}

TEST(Io, FunctionRejectsMalformed) {
  EXPECT_ERROR_CODE(function_from_json(R"({"exp":[1]})"), InvalidInput);
  EXPECT_ERROR_CODE(function_from_json(R"({"pwl":[[1,0],[0,1]]})"), InvalidInput);
  EXPECT_ERROR_CODE(function_from_json("[1,2"), InvalidInput);
}

TEST(Io, InstanceRoundTripAlphaBeta) {
  const GeneratedCase c = braess(3, 1.0);
  const Instance back = instance_from_json(instance_to_json(c.instance));
  ASSERT_EQ(back.arc_count(), c.instance.arc_count());
  EXPECT_EQ(back.node_ids(), c.instance.node_ids());
  for (std::size_t a = 0; a < back.arc_count(); ++a) {
    EXPECT_EQ(back.arc(a).id, c.instance.arc(a).id);
    EXPECT_EQ(back.arc(a).latency, c.instance.arc(a).latency);
  }
  EXPECT_EQ(instance_to_json(back), instance_to_json(c.instance));
}

TEST(Io, InstanceRoundTripPerArc) {
  const Instance inst = helpers::pigou(
      ThresholdPair::per_arc({{"a1", ScalarFn::constant(0.5), ScalarFn::polynomial({1.0, 1.0})}}));
  const Instance back = instance_from_json(instance_to_json(inst));
  EXPECT_FALSE(back.thresholds().is_alpha_beta());
  EXPECT_DOUBLE_EQ(back.theta_min(1, 2.0), -0.5);
  EXPECT_DOUBLE_EQ(back.theta_max(1, 2.0), 3.0);
  EXPECT_DOUBLE_EQ(back.theta_max(0, 2.0), 0.0);
}

TEST(Io, InstanceValidation) {
  const std::string bad_arc = R"({"nodes":["s","t"],"arcs":[{"id":"a","tail":"s","head":"q","latency":{"poly":[1]}}],
    "commodities":[{"source":"s","sink":"t","demand":1}],"thresholds":{"kind":"alpha_beta","alpha":0,"beta":1}})";
  EXPECT_ERROR_CODE(instance_from_json(bad_arc), InvalidInput);
  const std::string decreasing = R"({"nodes":["s","t"],"arcs":[{"id":"a","tail":"s","head":"t","latency":{"poly":[1,-1]}}],
    "commodities":[{"source":"s","sink":"t","demand":1}],"thresholds":{"kind":"alpha_beta","alpha":0,"beta":1}})";
  EXPECT_ERROR_CODE(instance_from_json(decreasing), InvalidInput);
  const std::string bad_alpha = R"({"nodes":["s","t"],"arcs":[{"id":"a","tail":"s","head":"t","latency":{"poly":[1]}}],
    "commodities":[{"source":"s","sink":"t","demand":1}],"thresholds":{"kind":"alpha_beta","alpha":-2,"beta":1}})";
  EXPECT_ERROR_CODE(instance_from_json(bad_alpha), AlphaOutOfRange);
}

TEST(Io, FlowAndDeviationRoundTrip) {
  const GeneratedCase c = braess(4, 2.0);
  const Flow x = flow_from_json(c.instance, flow_to_json(c.instance, c.x));
  for (std::size_t a = 0; a < c.instance.arc_count(); ++a) EXPECT_DOUBLE_EQ(x.arc_flow(a), c.x.arc_flow(a));
  const Deviation d = deviation_from_json(c.instance, deviation_to_json(c.instance, c.deviation));
  for (std::size_t a = 0; a < c.instance.arc_count(); ++a) {
    for (double t : {0.0, 0.2, 0.3, 1.0}) EXPECT_DOUBLE_EQ(d.value(a, t), c.deviation.value(a, t));
  }
}

TEST(Io, DeviationOmittedArcsAreZero) {
  const Instance inst = helpers::pigou();
  const Deviation d = deviation_from_json(inst, R"({"arcs":{"a1":{"poly":[0.5]}}})");
  EXPECT_DOUBLE_EQ(d.value(0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(d.value(1, 1.0), 0.5);
  EXPECT_ERROR_CODE(deviation_from_json(inst, R"({"arcs":{"zz":{"poly":[0.5]}}})"), InvalidInput);
}

TEST(Io, FlowRejectsInfeasible) {
  const Instance inst = helpers::pigou();
  EXPECT_ERROR_CODE(flow_from_json(inst, R"({"commodities":[{"paths":[{"arcs":["a0"],"flow":0.4}]}]})"),
                    InfeasibleFlow);
  const Flow f = flow_from_json(inst, R"({"commodities":[{"paths":[{"arcs":["a0"],"flow":0.4},{"arcs":["a1"],"flow":0.6}]}]})");
  EXPECT_DOUBLE_EQ(f.arc_flow(1), 0.6);
}

TEST(Io, JsonShape) {
  const auto j = nlohmann::json::parse(instance_to_json(helpers::pigou()));
  EXPECT_EQ(j["arcs"].size(), 2u);
  EXPECT_EQ(j["thresholds"]["kind"], "alpha_beta");
  EXPECT_EQ(j["commodities"][0]["source"], "s");
}

TEST(Io, DotMentionsEveryArc) {
  const std::string dot = instance_to_dot(helpers::pigou());
  EXPECT_NE(dot.find("a0"), std::string::npos);
  EXPECT_NE(dot.find("a1"), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
}
