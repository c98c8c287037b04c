#pragma once

#include <cstddef>
#include <functional>

namespace cheeger_gap {

/// Worker count: `requested` (hardware concurrency when 0), capped by the
/// CHEEGER_GAP_THREADS environment variable when it is set.
std::size_t worker_threads(std::size_t requested = 0);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work items are
/// handed out dynamically; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace cheeger_gap
