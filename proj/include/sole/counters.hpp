#pragma once

#include <cstdint>

namespace sole {

// Instrumentation counters. Thread-local so that const queries stay safe to
// run concurrently; callers reset before a measured operation and read after.
struct OpCounters {
  std::uint64_t node_visits = 0;       // tree nodes touched by queries
  std::uint64_t update_work = 0;       // nodes touched or built by updates
  std::uint64_t rebuilt_nodes = 0;     // nodes created by partial rebuilds
  std::uint64_t heap_seeds = 0;        // initial candidates of the last top-k
  std::uint64_t max_candidate_heap = 0;
};

OpCounters& op_counters();

inline void reset_op_counters() { op_counters() = OpCounters{}; }

}  // namespace sole
