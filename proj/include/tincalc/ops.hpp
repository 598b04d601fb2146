#pragma once

#include <cstdint>

// Arithmetic-operation counters. Each thread accumulates into its own
// counter; callers that fan work out to other threads sum the per-task
// deltas themselves.
namespace tincalc::ops {

inline thread_local std::uint64_t counter = 0;

inline void tick(std::uint64_t n = 1) { counter += n; }
inline std::uint64_t count() { return counter; }
inline void reset() { counter = 0; }

/// Measures the operations performed while the scope is alive.
class Scope {
 public:
  Scope() : start_(counter) {}
  std::uint64_t elapsed() const { return counter - start_; }

 private:
  std::uint64_t start_;
};

}  // namespace tincalc::ops
