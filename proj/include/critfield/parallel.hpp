#pragma once

#include <cstddef>
#include <functional>

namespace critfield {

/// Worker cap: min(hardware_concurrency, CRITFIELD_THREADS) when the
/// environment variable is set.
unsigned thread_budget();

/// Runs fn(i) for i in [0, n), statically partitioned over the thread
/// budget. Deterministic: partitioning depends only on n and the budget,
/// and callers merge results by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace critfield
