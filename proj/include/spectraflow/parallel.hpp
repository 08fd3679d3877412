#pragma once

#include <cstddef>
#include <functional>

namespace spectraflow {

// Environment variable overriding the worker count.
inline constexpr const char* kWorkersEnvVar = "SPECTRAFLOW_WORKERS";

// SPECTRAFLOW_WORKERS if set to a positive integer, else the hardware
// concurrency (at least 1).
std::size_t default_worker_count();

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index runs
// exactly once; results must be written to per-index slots so output never
// depends on scheduling. If any call throws, the exception from the smallest
// failing index is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

} // namespace spectraflow
