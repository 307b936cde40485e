#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypercopy {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

// Dense node identifier: after ingestion node ids are exactly 0..n-1,
// ordered by first appearance in the (timestamp, input-order) edge sequence.
using NodeId = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Malformed input, impossible requests, schema violations. CLI exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to reach tolerance. CLI exit code 3.
struct ConvergenceError : std::runtime_error {
  double residual = 0.0;
  ConvergenceError(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

}  // namespace hypercopy
