#pragma once

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "devratio/errors.hpp"
#include "devratio/instance.hpp"

#define EXPECT_ERROR_CODE(stmt, expected)                                               \
  do {                                                                                  \
    try {                                                                               \
      stmt;                                                                             \
      ADD_FAILURE() << "no devratio::Error thrown by " #stmt;                           \
    } catch (const devratio::Error& e) {                                                \
      EXPECT_EQ(e.code(), devratio::ErrorCode::expected) << e.what();                   \
    }                                                                                   \
  } while (0)

namespace helpers {

/// s -> t over parallel arcs "a0", "a1", ... with the given latencies.
inline devratio::Instance parallel(std::vector<devratio::LatencyFn> latencies, double demand = 1.0,
                                   devratio::ThresholdPair th = devratio::ThresholdPair::zero()) {
  std::vector<devratio::ArcSpec> arcs;
  for (std::size_t i = 0; i < latencies.size(); ++i) arcs.push_back({"a" + std::to_string(i), "s", "t", latencies[i]});
  return devratio::Instance({"s", "t"}, std::move(arcs), {{"s", "t", demand}}, std::move(th));
}

inline devratio::Instance pigou(devratio::ThresholdPair th = devratio::ThresholdPair::zero()) {
  return parallel({devratio::LatencyFn::linear(), devratio::LatencyFn::constant(1.0)}, 1.0, std::move(th));
}

}  // namespace helpers
