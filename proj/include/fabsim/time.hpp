#pragma once

#include <cstdint>

namespace fabsim {

// Virtual time in integer nanoseconds since simulation start.
// 1 ns ticks keep all latency arithmetic exact (the measurement
// histograms use 300 ns bins, so there is ample headroom).
using SimTime = std::int64_t;

constexpr SimTime kNever = INT64_MAX;

constexpr SimTime nsec(std::int64_t n) { return n; }
constexpr SimTime usec(std::int64_t n) { return n * 1000; }
constexpr SimTime msec(std::int64_t n) { return n * 1000 * 1000; }
constexpr SimTime sec(std::int64_t n) { return n * 1000 * 1000 * 1000; }

constexpr double to_seconds(SimTime t) { return static_cast<double>(t) * 1e-9; }

}  // namespace fabsim
