#include "sole/counters.hpp"

namespace sole {

OpCounters& op_counters() {
  thread_local OpCounters counters;
  return counters;
}

}  // namespace sole
