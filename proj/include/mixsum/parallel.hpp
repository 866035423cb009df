#pragma once

#include <cstddef>
#include <functional>

namespace mixsum {

// Worker count used by the family-wide loops. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
// write into per-index slots so results do not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mixsum
