#pragma once

#include <string>

#include "devratio/instance.hpp"

namespace devratio {

// JSON text formats. Functions are {"poly":[c0,c1,...]} or {"pwl":[[x,y],...]}.
//
// Instance:  {"nodes":[...], "arcs":[{"id","tail","head","latency":fn}],
//             "commodities":[{"source","sink","demand"}],
//             "thresholds":{"kind":"alpha_beta","alpha":a,"beta":b}
//                        | {"kind":"per_arc","arcs":{"<id>":{"max":fn,"neg_min":fn}}}}
// Deviation: {"arcs":{"<id>":fn}}   (omitted arcs are zero)
// Flow:      {"commodities":[{"paths":[{"arcs":["<id>",...],"flow":v}]}]}

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

std::string deviation_to_json(const Instance& instance, const Deviation& deviation);
Deviation deviation_from_json(const Instance& instance, const std::string& text);

std::string flow_to_json(const Instance& instance, const Flow& flow);
Flow flow_from_json(const Instance& instance, const std::string& text);

std::string function_to_json(const ScalarFn& fn);
ScalarFn function_from_json(const std::string& text);

/// Graphviz rendering with latency labels.
std::string instance_to_dot(const Instance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace devratio
