#pragma once

#include <cstddef>
#include <functional>

namespace plasmon {

// Worker count from PLASMON_CHAIN_THREADS (>0), else hardware concurrency.
std::size_t worker_count();

// Runs fn(0..count-1) across worker_count() threads. Each index must touch
// only its own output slot; results are then independent of the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace plasmon
